#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ansx/hardening.hpp"
#include "ansx/tables.hpp"

namespace ansx {

// Shannon entropy in bits/symbol; 0*lg 0 = 0.
double entropy(std::span<const double> p);
double binary_entropy(double p);  // h(p)

struct KlResult {
  double exact;      // sum p lg(p/q)
  double quadratic;  // 0.72 * sum (p-q)^2 / p
};
// Rate penalty of coding p with a q-coder.
KlResult kl_penalty(std::span<const double> p, std::span<const double> q);

// Harmonic number H(n); exact summation below a crossover, the asymptotic
// expansion gamma + ln n + 1/2n - 1/12n^2 + 1/120n^4 above it. harmonic(0)=0.
double harmonic(u64 n);
double harmonic_exact(u64 n);  // plain summation (oracle-grade, Kahan)

// Empirical state-visit histogram of the encoding chain driven by i.i.d.
// symbols ~ p. States are recorded before each step after a short burn-in.
struct StateHistogram {
  u32 state_begin = 0;
  u64 steps = 0;
  std::vector<u64> counts;  // indexed by x - state_begin

  double frequency_below(u32 x) const;  // P(state < x)
};

StateHistogram simulate_states(const CodecTables& t, std::span<const double> p, u64 steps,
                               u64 seed, u64 burn_in = 4096);

// Total-variation distance between the histogram and the normalized 1/x law.
double state_law_tvd(const StateHistogram& h);

struct RenormSplit {
  double empirical;  // measured P(x < X_s)
  double predicted;  // c_s = fractional part of log_b q_s
  double sigma;      // batch-means standard error of the empirical frequency
};
RenormSplit renorm_split_probability(const CodecTables& t, u32 s, const StateHistogram& h);

// One-pass measurement for every symbol with batch-means error bars.
std::vector<RenormSplit> measure_renorm_splits(const CodecTables& t, std::span<const double> p,
                                               u64 steps, u64 seed, u32 batches = 32);

// c_s for a bare ratio, without tables.
double renorm_split_predicted(double q, u32 base);

struct RateLossReport {
  double bits_per_symbol;       // output bits incl. the final-state carry
  double model_cross_entropy;   // -sum p lg q
  double sample_cross_entropy;  // -(1/N) sum lg q_{s_i} over the drawn symbols
  double measured;              // bits_per_symbol - model_cross_entropy
  double measured_vs_sample;    // bits_per_symbol - sample_cross_entropy
  double predicted;             // quadratic impreciseness estimate under the histogram
  double scd_scaling;           // analytic log_b(l)/l scaling value for shuffled tables
};
RateLossReport rate_loss(const CodecTables& t, std::span<const double> p, u64 steps, u64 seed);

struct DigitBiasReport {
  bool defined = false;      // false when no step ever transfers a digit
  double excess = 0.0;       // P(last transferred digit = 0) - 1/b
  double bound = 0.0;        // (b-1)/(b^2 ln b) * n/l, an upper-bound-order value
};
// Expected bias of the last transferred digit per step under the histogram.
DigitBiasReport digit_bias(const CodecTables& t, const StateHistogram& h,
                           std::span<const double> p);
// The same, measured by simulation; masks (if given) are applied first.
DigitBiasReport measure_digit_bias(const CodecTables& t, std::span<const double> p, u64 steps,
                                   u64 seed, const MaskList* masks = nullptr);

// Per-symbol decode probability under the 1/x law: N * sum{1/x : D1(x)=s}.
std::vector<double> effective_symbol_probs(const CodecTables& t);

// Draw-without-replacement window statistics behind the shuffled builder:
// P(K of the first M draws hit the L marked slots out of N).
double hypergeom_log_pmf(u64 N, u64 M, u64 L, u64 K);
double hypergeom_pmf(u64 N, u64 M, u64 L, u64 K);
// Gaussian-approximation width sqrt(M q (1-q) (1-M/N)) with q = L/N.
double hypergeom_sigma(u64 N, u64 M, u64 L);

// Scatter of the table fill at a probe state over many seeds: per symbol, the
// sample std of x_s/q_s - x at x = probe across seeds, plus the predicted
// width sqrt((1-q_s)(b-1) l / (4 q_s)) at the midpoint probe.
struct ScdWidth {
  std::vector<double> measured;
  std::vector<double> predicted;
};
ScdWidth measure_scd_width(const SymbolModel& m, u32 probe, u64 first_seed, u32 seeds);

}  // namespace ansx
