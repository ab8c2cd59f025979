#include "ansx/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "ansx/prng.hpp"
#include "ansx/stream.hpp"

namespace ansx {

namespace {

constexpr double kLgel = 1.4426950408889634;  // lg(e)

void check_distribution(std::span<const double> p) {
  double sum = 0.0;
  for (double v : p) {
    require(std::isfinite(v) && v >= 0.0, Err::BadDistribution,
            "probabilities must be finite and non-negative");
    sum += v;
  }
  require(std::abs(sum - 1.0) <= 1e-9, Err::BadDistribution, "probabilities must sum to 1");
}

// Cumulative sampler over p.
struct SymbolSampler {
  std::vector<double> cdf;
  explicit SymbolSampler(std::span<const double> p) {
    cdf.resize(p.size());
    double acc = 0.0;
    for (size_t s = 0; s < p.size(); ++s) {
      acc += p[s];
      cdf[s] = acc;
    }
    cdf.back() = 1.0;
  }
  u32 draw(Splitmix& rng) const {
    const double u = rng.next_unit();
    return static_cast<u32>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  }
};

long double harmonic_ld(u64 n) {
  long double sum = 0.0L;
  for (u64 i = n; i >= 1; --i) sum += 1.0L / static_cast<long double>(i);
  return sum;
}

// 1/N = sum over I of 1/x
long double state_law_norm_inv(u32 l, u64 bl) {
  long double sum = 0.0L;
  for (u64 x = l; x < bl; ++x) sum += 1.0L / static_cast<long double>(x);
  return sum;
}

u32 transfer_count(const CodecTables& t, u32 x, u32 s) {
  return t.digits_per_step(s) - (x < t.renorm_boundary(s) ? 1u : 0u);
}

}  // namespace

double entropy(std::span<const double> p) {
  check_distribution(p);
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

double binary_entropy(double p) {
  require(p >= 0.0 && p <= 1.0, Err::BadDistribution, "probability outside [0,1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

KlResult kl_penalty(std::span<const double> p, std::span<const double> q) {
  require(p.size() == q.size(), Err::BadDistribution, "distributions differ in size");
  check_distribution(p);
  check_distribution(q);
  KlResult r{0.0, 0.0};
  for (size_t s = 0; s < p.size(); ++s) {
    if (p[s] <= 0.0) continue;
    require(q[s] > 0.0, Err::BadDistribution, "q vanishes where p does not");
    r.exact += p[s] * std::log2(p[s] / q[s]);
    const double d = p[s] - q[s];
    r.quadratic += 0.72 * d * d / p[s];
  }
  return r;
}

double harmonic_exact(u64 n) {
  return static_cast<double>(harmonic_ld(n));
}

double harmonic(u64 n) {
  if (n == 0) return 0.0;
  constexpr u64 kCrossover = 128;
  if (n <= kCrossover) return harmonic_exact(n);
  constexpr double kGamma = 0.5772156649015329;
  const double x = static_cast<double>(n);
  const double x2 = x * x;
  return kGamma + std::log(x) + 0.5 / x - 1.0 / (12.0 * x2) + 1.0 / (120.0 * x2 * x2);
}

double StateHistogram::frequency_below(u32 x) const {
  u64 below = 0;
  const u64 limit = x > state_begin ? x - state_begin : 0;
  for (u64 i = 0; i < std::min<u64>(limit, counts.size()); ++i) below += counts[i];
  return static_cast<double>(below) / static_cast<double>(steps);
}

StateHistogram simulate_states(const CodecTables& t, std::span<const double> p, u64 steps,
                               u64 seed, u64 burn_in) {
  require(p.size() == t.model().alphabet_size(), Err::BadDistribution,
          "driving distribution does not match the alphabet");
  check_distribution(p);
  require(steps >= 1, Err::BadParameter, "need at least one step");

  StateHistogram h;
  h.state_begin = t.state_begin();
  h.steps = steps;
  h.counts.assign(static_cast<size_t>(t.state_end() - t.state_begin()), 0);

  SymbolSampler sampler(p);
  Splitmix rng(seed);
  DigitBuffer sink(t.model().radix_bits());
  u32 x = t.state_begin();
  for (u64 i = 0; i < burn_in; ++i) {
    encode_symbol(x, sampler.draw(rng), t, sink);
    sink.clear();
  }
  for (u64 i = 0; i < steps; ++i) {
    ++h.counts[x - h.state_begin];
    encode_symbol(x, sampler.draw(rng), t, sink);
    sink.clear();
  }
  return h;
}

std::vector<RenormSplit> measure_renorm_splits(const CodecTables& t, std::span<const double> p,
                                               u64 steps, u64 seed, u32 batches) {
  require(p.size() == t.model().alphabet_size(), Err::BadDistribution,
          "driving distribution does not match the alphabet");
  check_distribution(p);
  require(batches >= 2 && steps >= batches, Err::BadParameter, "need at least two batches");
  const u32 n = t.model().alphabet_size();

  SymbolSampler sampler(p);
  Splitmix rng(seed);
  DigitBuffer sink(t.model().radix_bits());
  u32 x = t.state_begin();
  for (u64 i = 0; i < 4096; ++i) {
    encode_symbol(x, sampler.draw(rng), t, sink);
    sink.clear();
  }

  // per-batch frequencies of x < X_s; batch means give an error estimate that
  // honestly reflects the chain's autocorrelation
  const u64 batch_len = steps / batches;
  std::vector<std::vector<double>> freq(n, std::vector<double>(batches, 0.0));
  for (u32 bi = 0; bi < batches; ++bi) {
    std::vector<u64> below(n, 0);
    for (u64 i = 0; i < batch_len; ++i) {
      for (u32 s = 0; s < n; ++s)
        if (x < t.renorm_boundary(s)) ++below[s];
      encode_symbol(x, sampler.draw(rng), t, sink);
      sink.clear();
    }
    for (u32 s = 0; s < n; ++s)
      freq[s][bi] = static_cast<double>(below[s]) / static_cast<double>(batch_len);
  }

  std::vector<RenormSplit> out(n);
  for (u32 s = 0; s < n; ++s) {
    double mean = 0.0;
    for (double f : freq[s]) mean += f;
    mean /= batches;
    double var = 0.0;
    for (double f : freq[s]) var += (f - mean) * (f - mean);
    var /= (batches - 1.0);
    out[s].empirical = mean;
    out[s].predicted = std::log2(static_cast<double>(t.renorm_boundary(s)) / t.state_begin()) /
                       t.model().radix_bits();
    out[s].sigma = std::sqrt(var / batches);
  }
  return out;
}

double state_law_tvd(const StateHistogram& h) {
  const u32 l = h.state_begin;
  const u64 bl = l + h.counts.size();
  const long double norm_inv = state_law_norm_inv(l, bl);
  long double tvd = 0.0L;
  for (size_t i = 0; i < h.counts.size(); ++i) {
    const long double expect = (1.0L / static_cast<long double>(l + i)) / norm_inv;
    const long double got =
        static_cast<long double>(h.counts[i]) / static_cast<long double>(h.steps);
    tvd += std::abs(got - expect);
  }
  return static_cast<double>(tvd / 2.0L);
}

double renorm_split_predicted(double q, u32 base) {
  require(q > 0.0 && q <= 1.0, Err::BadDistribution, "ratio outside (0,1]");
  const double lg = std::log2(q) / std::log2(static_cast<double>(base));
  double frac = lg - std::floor(lg);
  // exact negative powers of the base always transfer the full digit count
  if (frac > 1.0 - 1e-12) frac = 0.0;
  return frac;
}

RenormSplit renorm_split_probability(const CodecTables& t, u32 s, const StateHistogram& h) {
  RenormSplit r;
  const u32 boundary = t.renorm_boundary(s);
  r.empirical = h.frequency_below(boundary);
  // c_s = log_b(X_s / l), exactly the fractional part of log_b q_s
  r.predicted = std::log2(static_cast<double>(boundary) / h.state_begin) /
                t.model().radix_bits();

  // batch means over 32 slices would need the time series; the histogram has
  // lost it, so estimate the error from the binomial count with a dependence
  // inflation factor of 3 (measured inflation on these chains is below 2).
  const double f = r.empirical;
  r.sigma = 3.0 * std::sqrt(std::max(f * (1.0 - f), 1e-12) / static_cast<double>(h.steps));
  return r;
}

RateLossReport rate_loss(const CodecTables& t, std::span<const double> p, u64 steps, u64 seed) {
  require(p.size() == t.model().alphabet_size(), Err::BadDistribution,
          "driving distribution does not match the alphabet");
  check_distribution(p);
  require(steps >= 1, Err::BadParameter, "need at least one step");
  const SymbolModel& m = t.model();
  const u32 r_bits = m.radix_bits();

  SymbolSampler sampler(p);
  Splitmix rng(seed);
  DigitBuffer sink(r_bits);
  u32 x = t.state_begin();
  u64 digits = 0;
  long double sample_info = 0.0L;
  std::vector<double> lg_inv_q(m.alphabet_size());
  for (u32 s = 0; s < m.alphabet_size(); ++s) lg_inv_q[s] = -std::log2(m.prob(s));

  StateHistogram h;
  h.state_begin = t.state_begin();
  h.steps = steps;
  h.counts.assign(static_cast<size_t>(t.state_end() - t.state_begin()), 0);

  for (u64 i = 0; i < steps; ++i) {
    const u32 s = sampler.draw(rng);
    sample_info += lg_inv_q[s];
    ++h.counts[x - h.state_begin];
    encode_symbol(x, s, t, sink);
    digits += sink.size();
    sink.clear();
  }

  RateLossReport rep{};
  const double carry = std::log2(static_cast<double>(x) / t.state_begin());
  rep.bits_per_symbol =
      (static_cast<double>(digits) * r_bits + carry) / static_cast<double>(steps);
  rep.model_cross_entropy = 0.0;
  for (u32 s = 0; s < m.alphabet_size(); ++s)
    if (p[s] > 0.0) rep.model_cross_entropy += p[s] * lg_inv_q[s];
  rep.sample_cross_entropy = static_cast<double>(sample_info / steps);
  rep.measured = rep.bits_per_symbol - rep.model_cross_entropy;
  rep.measured_vs_sample = rep.bits_per_symbol - rep.sample_cross_entropy;

  // quadratic impreciseness estimate: average of sum_s q_s (eps_s(x)/x)^2 / ln4
  long double predicted = 0.0L;
  const u32 l = t.state_begin();
  for (size_t i = 0; i < h.counts.size(); ++i) {
    if (h.counts[i] == 0) continue;
    const u32 xv = l + static_cast<u32>(i);
    long double step_sum = 0.0L;
    for (u32 s = 0; s < m.alphabet_size(); ++s) {
      const u32 tr = transfer_count(t, xv, s);
      const u32 reduced = tr * r_bits >= 32 ? 0 : (xv >> (tr * r_bits));
      const long double ideal = static_cast<long double>(xv) /
                                (static_cast<long double>(m.prob(s)) *
                                 std::pow(2.0L, static_cast<long double>(tr) * r_bits));
      const long double eps = static_cast<long double>(t.encode_entry(s, reduced)) - ideal;
      step_sum += static_cast<long double>(m.prob(s)) * eps * eps /
                  (static_cast<long double>(xv) * xv);
    }
    predicted += static_cast<long double>(h.counts[i]) * step_sum;
  }
  rep.predicted = static_cast<double>(predicted / steps / (2.0L * std::log(2.0L)));

  const double b = m.base();
  const double ltot = m.total();
  const double n = m.alphabet_size();
  rep.scd_scaling = std::log2(ltot) / r_bits / ltot * (b * b - 1.0) / (b * b) * (n - 1.0) /
                    (std::log(4.0) * std::log(b));
  return rep;
}

DigitBiasReport digit_bias(const CodecTables& t, const StateHistogram& h,
                           std::span<const double> p) {
  DigitBiasReport rep;
  const SymbolModel& m = t.model();
  const u32 r = m.radix_bits();
  long double zero_weight = 0.0L, transfer_weight = 0.0L;
  for (size_t i = 0; i < h.counts.size(); ++i) {
    if (h.counts[i] == 0) continue;
    const u32 x = h.state_begin + static_cast<u32>(i);
    for (u32 s = 0; s < m.alphabet_size(); ++s) {
      const u32 tr = transfer_count(t, x, s);
      if (tr == 0) continue;
      const long double w = static_cast<long double>(h.counts[i]) * p[s];
      transfer_weight += w;
      const u32 last = (x >> ((tr - 1) * r)) & (m.base() - 1);
      if (last == 0) zero_weight += w;
    }
  }
  if (transfer_weight == 0.0L) return rep;
  rep.defined = true;
  rep.excess = static_cast<double>(zero_weight / transfer_weight) - 1.0 / m.base();
  const double b = m.base();
  rep.bound = (b - 1.0) / (b * b * std::log(b)) * m.alphabet_size() / m.total();
  return rep;
}

DigitBiasReport measure_digit_bias(const CodecTables& t, std::span<const double> p, u64 steps,
                                   u64 seed, const MaskList* masks) {
  require(p.size() == t.model().alphabet_size(), Err::BadDistribution,
          "driving distribution does not match the alphabet");
  check_distribution(p);
  const SymbolModel& m = t.model();
  const u32 r = m.radix_bits();

  SymbolSampler sampler(p);
  Splitmix rng(seed);
  u32 x = t.state_begin();
  u32 mask_idx = 0;
  u64 zero = 0, transfers = 0;
  for (u64 i = 0; i < steps; ++i) {
    const u32 s = sampler.draw(rng);
    const u32 tr = transfer_count(t, x, s);
    if (tr > 0) {
      const u32 width = tr * r;
      u32 block = width >= 32 ? x : (x & ((1u << width) - 1));
      if (masks && !masks->empty())
        block ^= masks->masks[mask_idx] & (width >= 32 ? 0xFFFFFFFFu : ((1u << width) - 1));
      const u32 last = (block >> ((tr - 1) * r)) & (m.base() - 1);
      ++transfers;
      if (last == 0) ++zero;
      x = width >= 32 ? 0 : (x >> width);
    }
    if (masks && !masks->empty()) mask_idx = (mask_idx + 1) % masks->size();
    x = t.encode_entry(s, x);
  }

  DigitBiasReport rep;
  if (transfers == 0) return rep;
  rep.defined = true;
  rep.excess = static_cast<double>(zero) / static_cast<double>(transfers) - 1.0 / m.base();
  const double b = m.base();
  rep.bound = (b - 1.0) / (b * b * std::log(b)) * m.alphabet_size() / m.total();
  return rep;
}

std::vector<double> effective_symbol_probs(const CodecTables& t) {
  const u32 l = t.state_begin();
  const u64 bl = t.state_end();
  std::vector<long double> sums(t.model().alphabet_size(), 0.0L);
  for (u64 x = l; x < bl; ++x)
    sums[t.decode_entry(static_cast<u32>(x)).symbol] += 1.0L / static_cast<long double>(x);
  const long double norm_inv = state_law_norm_inv(l, bl);
  std::vector<double> out(sums.size());
  for (size_t s = 0; s < sums.size(); ++s) out[s] = static_cast<double>(sums[s] / norm_inv);
  return out;
}

double hypergeom_log_pmf(u64 N, u64 M, u64 L, u64 K) {
  require(M <= N && L <= N, Err::BadParameter, "window larger than the population");
  if (K > M || K > L || M - K > N - L) return -std::numeric_limits<double>::infinity();
  auto lchoose = [](u64 n, u64 k) -> long double {
    return std::lgammal(static_cast<long double>(n) + 1) -
           std::lgammal(static_cast<long double>(k) + 1) -
           std::lgammal(static_cast<long double>(n - k) + 1);
  };
  return static_cast<double>(lchoose(M, K) + lchoose(N - M, L - K) - lchoose(N, L));
}

double hypergeom_pmf(u64 N, u64 M, u64 L, u64 K) {
  const double lp = hypergeom_log_pmf(N, M, L, K);
  return std::isinf(lp) ? 0.0 : std::exp(lp);
}

double hypergeom_sigma(u64 N, u64 M, u64 L) {
  require(M <= N && L <= N && N > 0, Err::BadParameter, "window larger than the population");
  const double q = static_cast<double>(L) / N;
  return std::sqrt(static_cast<double>(M) * q * (1.0 - q) *
                   (1.0 - static_cast<double>(M) / N));
}

ScdWidth measure_scd_width(const SymbolModel& m, u32 probe, u64 first_seed, u32 seeds) {
  require(probe > m.total() && probe < m.total() * static_cast<u64>(m.base()),
          Err::BadParameter, "probe state outside the working interval");
  require(seeds >= 2, Err::BadParameter, "need at least two seeds");
  const u32 n = m.alphabet_size();

  std::vector<long double> sum(n, 0.0L), sum2(n, 0.0L);
  for (u32 i = 0; i < seeds; ++i) {
    const CodecTables t = CodecTables::build_scd(m, first_seed + i);
    std::vector<u64> occurrences(n, 0);
    for (u32 x = m.total(); x < probe; ++x) ++occurrences[t.decode_entry(x).symbol];
    for (u32 s = 0; s < n; ++s) {
      // deviation of the fill from the ideal line, in units of 1/q_s
      const double xs = static_cast<double>(m.count(s)) + static_cast<double>(occurrences[s]);
      const double dev = xs / m.prob(s) - static_cast<double>(probe);
      sum[s] += dev;
      sum2[s] += static_cast<long double>(dev) * dev;
    }
  }

  ScdWidth w;
  w.measured.resize(n);
  w.predicted.resize(n);
  for (u32 s = 0; s < n; ++s) {
    const long double mean = sum[s] / seeds;
    const long double var = sum2[s] / seeds - mean * mean;
    w.measured[s] = static_cast<double>(std::sqrt(std::max(var, 0.0L)));
    const double q = m.prob(s);
    w.predicted[s] =
        std::sqrt((1.0 - q) * (m.base() - 1.0) * static_cast<double>(m.total()) / (4.0 * q));
  }
  return w;
}

}  // namespace ansx
