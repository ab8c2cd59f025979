#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ansx/container.hpp"
#include "ansx/tables.hpp"

namespace ansx {

// Forward error correction by forbidden symbol: the coded model reserves a
// slice of probability p_d = l_f/l for a symbol the encoder never emits.
// After a channel error the decoder walks effectively random states and hits
// a forbidden one with probability p_d per step, which bounds how far any
// wrong correction can survive.

struct FecModel {
  SymbolModel coded;        // allowed symbols plus (optionally) the forbidden one
  u32 allowed_n = 0;        // alphabet of the payload data
  u32 forbidden_count = 0;  // l_f; zero means no forbidden symbol

  double pd() const { return static_cast<double>(forbidden_count) / coded.total(); }
  bool has_forbidden() const { return forbidden_count > 0; }
  u32 forbidden_symbol() const { return allowed_n; }
};

// Shrinks every allowed probability by (1-pd) and gives the slack to the
// forbidden symbol. With even_counts (needed by the bit-table extension) the
// quantization runs at half resolution. PdTooLarge when an allowed slot
// would round to zero.
FecModel rescale_with_forbidden(const SymbolModel& base, double pd, bool even_counts = false);

// Decode states assigned to the forbidden symbol.
std::vector<u32> forbidden_states(const CodecTables& t, const FecModel& f);

// ---- redundancy thresholds -------------------------------------------------

// Distribution of bits consumed per decoding step.
struct BlockLengthDist {
  std::vector<std::pair<double, double>> atoms;  // (bits, probability)
  double mean() const;
};
using BlockLengthFn = std::function<BlockLengthDist(double pd)>;

BlockLengthDist constant_block_length(double mean_bits);
// Block lengths of the rescaled model at a given pd, driven by the base
// model's own probabilities.
BlockLengthFn model_block_lengths(const SymbolModel& base, bool even_counts);

// pd0: capacity threshold 1 - 2^{-H h(pb)/(1-h(pb))}.
double shannon_pd0(double pb, double H);
// pd1: threshold for sequential correction, via the concentration-penalized
// entropy maximum G = max_p [h(p) - lg(e)/(2 pb (1-pb)) (p-pb)^2].
double practical_pd1(double pb, double H);
// pd2: finite expected tree width under the basic weight; the constant-
// block-length closed form.
double tree_pd2_approx(double pb, double H);
// The exact block-length-weighted fixed point. On return *dist_out (if
// given) holds the block distribution the returned pd is consistent with.
double tree_pd2(double pb, double H, const BlockLengthFn& lengths,
                BlockLengthDist* dist_out = nullptr);

struct Thresholds {
  double pd0, pd1, pd2;
};
// With a null lengths function pd2 falls back to the closed form.
Thresholds compute_thresholds(double pb, double H, const BlockLengthFn& lengths = nullptr);

// Negative root v of p̃_d^v = sum_a P_a (pb^{v+1} + p̃b^{v+1})^a; the tail
// exponent of weight drops along the correct path. NoNegativeRoot when only
// v = 0 exists (pd at or below the capacity threshold).
double drop_root_v(double pb, double pd, const BlockLengthDist& lengths);
// Root u < 1 of p̃_d^{u-1} = sum_a P_a (pb^u + p̃b^u)^a, solved independently;
// the subtree-growth exponent. Satisfies u = v + 1.
double subtree_root_u(double pb, double pd, const BlockLengthDist& lengths);

struct WidthCheck {
  bool finite;
  double v;
};
// Expected processed nodes per corrected bit are finite iff v < -1/2.
WidthCheck expected_tree_width_finite(double pb, double pd, const BlockLengthDist& lengths);

// ---- channel ----------------------------------------------------------------

// Memoryless symmetric channel: flips each bit independently with
// probability pb. Returns the number of flips.
u64 bsc_corrupt_bits(std::span<u8> bytes, u64 bit_count, double pb, u64 seed);

// Corrupts the channel-exposed region of a serialized ANSF container
// (protected header block and payload).
u64 corrupt_ansf(std::vector<u8>& container_bytes, double pb, u64 seed);

// ---- codec ------------------------------------------------------------------

struct FecEncodeConfig {
  u32 bit_table_len = 32;  // 0 disables the extension (not recommended)
  u64 table_seed = 1;
  TableInit init = TableInit::Scd;
  MaskList masks;  // optional
};

AnsfContainer fec_encode(std::span<const u16> message, const SymbolModel& base, double pd,
                         const FecEncodeConfig& cfg = {});

enum class FecStatus {
  Success,
  BudgetExhausted,   // node budget hit; retry with a larger budget
  SearchExhausted,   // every representable correction was ruled out
  FrontLost,         // all front candidates died
};

struct FecStats {
  u64 steps_executed = 0;   // decoder steps over all replays
  u64 nodes_created = 0;
  u64 expansions = 0;
  u64 max_queue = 0;
  u64 corrected_bits = 0;
  double steps_per_message_step = 0.0;
};

struct FecResult {
  FecStatus status = FecStatus::SearchExhausted;
  std::vector<u16> message;
  std::vector<u64> corrected_positions;  // payload bit indices
  FecStats stats;
};

struct TreeLimits {
  u64 max_nodes = 1u << 18;
  u32 queue_capacity = 1u << 16;  // spill list takes the overflow
  enum class Granularity { Run, Step } granularity = Granularity::Run;
  // Optional width-triggered focus: when the live queue grows past
  // width_trigger, expansion is restricted to triangles within `lookback`
  // bits of the deepest failure seen. Zero disables it.
  u32 width_trigger = 0;
  u64 lookback = 0;
};

// Best-first correction search over error hypotheses. Deterministic:
// identical inputs and limits expand identical node sequences.
FecResult tree_decode(const AnsfContainer& c, const CodecTables& t, double pb,
                      const TreeLimits& limits = {});

// Breadth-style sweep keeping the M corrections with the fewest flipped
// bits at each message position.
FecResult front_decode(const AnsfContainer& c, const CodecTables& t, u32 M);

}  // namespace ansx
