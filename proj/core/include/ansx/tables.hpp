#pragma once

#include <iosfwd>
#include <vector>

#include "ansx/model.hpp"

namespace ansx {

struct DecodeEntry {
  u16 symbol;
  u32 next;  // x_s, lies in I_s = {count(s) .. base*count(s)-1}
};

enum class TableInit { Precise, Scd };

// Coding/decoding tables over the working interval I = {l .. b*l-1}.
// decode and encode are mutually inverse bijections between I and the
// per-symbol intervals I_s; immutable once built and safe to share across
// threads.
class CodecTables {
public:
  // Deterministic construction: walks states in increasing order and always
  // picks the symbol whose next ideal position i/q_s is smallest. Keys are
  // compared exactly as rationals; equal keys pick the smaller symbol index.
  static CodecTables build_precise(const SymbolModel& m);

  // Shuffled construction: draws symbols without replacement from the fixed
  // multiset of (b-1)*count(s) appearances, using SplitMix64 indices with
  // swap-with-last extraction. Same seed and model give identical tables.
  static CodecTables build_scd(const SymbolModel& m, u64 seed);

  const SymbolModel& model() const { return model_; }
  TableInit init() const { return init_; }
  u64 seed() const { return seed_; }  // 0 for precise tables

  u32 state_begin() const { return model_.total(); }  // l
  u64 state_end() const {                             // b*l (may be 2^32)
    return static_cast<u64>(model_.total()) * model_.base();
  }

  DecodeEntry decode_entry(u32 x) const { return decode_[x - state_begin()]; }
  u32 encode_entry(u32 s, u32 xs) const {
    return encode_[static_cast<size_t>(encode_start_[s] + xs)];
  }

  // Digits transferred per coding step are digits_per_step(s) minus one when
  // the state is below renorm_boundary(s).
  u32 digits_per_step(u32 s) const { return k_[s]; }        // k_s
  u32 renorm_boundary(u32 s) const { return boundary_[s]; }  // X_s = count(s)*b^{k_s}

  // Conformance dump, little-endian: u32 base, u32 total, u16 n, n*u32
  // counts, then (b-1)*l decode entries as (u16 symbol, u32 next).
  void dump(std::ostream& os) const;

  bool operator==(const CodecTables& o) const {
    return model_ == o.model_ && decode_ == o.decode_;
  }

private:
  explicit CodecTables(const SymbolModel& m, TableInit init, u64 seed);
  void assign(u32 x, u32 s, std::vector<u32>& fill_counter);

  SymbolModel model_;
  TableInit init_;
  u64 seed_;
  std::vector<DecodeEntry> decode_;  // indexed by x - l
  std::vector<u32> encode_;          // flat C(s, x_s) at encode_start_[s] + x_s
  std::vector<i64> encode_start_;
  std::vector<u32> k_;
  std::vector<u32> boundary_;
};

inline bool operator==(const DecodeEntry& a, const DecodeEntry& b) {
  return a.symbol == b.symbol && a.next == b.next;
}

}  // namespace ansx
