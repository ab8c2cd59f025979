#include <algorithm>
#include <cmath>
#include <map>

#include "ansx/analysis.hpp"
#include "ansx/fec.hpp"

namespace ansx {

namespace {

void check_pb(double pb) {
  require(pb >= 0.0 && pb < 0.5, Err::BadParameter, "bit-flip probability must lie in [0, 0.5)");
}

}  // namespace

FecModel rescale_with_forbidden(const SymbolModel& base, double pd, bool even_counts) {
  require(pd >= 0.0 && pd < 1.0, Err::BadParameter, "forbidden probability must lie in [0,1)");
  FecModel f;
  f.allowed_n = base.alphabet_size();
  if (pd == 0.0) {
    f.coded = base;
    f.forbidden_count = 0;
    return f;
  }
  const double resolution = even_counts ? base.total() / 2.0 : base.total();
  std::vector<double> probs;
  probs.reserve(base.alphabet_size() + 1);
  for (u32 s = 0; s < base.alphabet_size(); ++s) {
    const double scaled = (1.0 - pd) * base.prob(s);
    require(scaled * resolution >= 1.0, Err::PdTooLarge,
            "an allowed symbol's slot count would round to zero");
    probs.push_back(scaled);
  }
  probs.push_back(pd);
  f.coded = even_counts ? SymbolModel::quantize_even(probs, base.base(), base.total())
                        : SymbolModel::quantize(probs, base.base(), base.total());
  f.forbidden_count = f.coded.count(f.allowed_n);
  return f;
}

std::vector<u32> forbidden_states(const CodecTables& t, const FecModel& f) {
  std::vector<u32> states;
  if (!f.has_forbidden()) return states;
  for (u64 x = t.state_begin(); x < t.state_end(); ++x)
    if (t.decode_entry(static_cast<u32>(x)).symbol == f.forbidden_symbol())
      states.push_back(static_cast<u32>(x));
  return states;
}

double BlockLengthDist::mean() const {
  double m = 0.0;
  for (const auto& [a, p] : atoms) m += a * p;
  return m;
}

BlockLengthDist constant_block_length(double mean_bits) {
  return {{{mean_bits, 1.0}}};
}

BlockLengthFn model_block_lengths(const SymbolModel& base, bool even_counts) {
  return [base, even_counts](double pd) {
    const FecModel f = rescale_with_forbidden(base, pd, even_counts);
    const u32 r = base.radix_bits();
    const u32 l = base.total();
    std::map<double, double> atoms;
    for (u32 s = 0; s < base.alphabet_size(); ++s) {
      // transfer count of the rescaled table entry, driven by the data model
      u32 k = 0;
      u64 boundary = f.coded.count(s);
      while (boundary < l) {
        boundary *= base.base();
        ++k;
      }
      const double c = std::log2(static_cast<double>(boundary) / l) / r;
      const double drive = base.prob(s);
      if (c > 0.0) atoms[(k - 1.0) * r] += drive * c;
      atoms[static_cast<double>(k) * r] += drive * (1.0 - c);
    }
    BlockLengthDist d;
    for (const auto& [a, p] : atoms)
      if (p > 0.0) d.atoms.emplace_back(a, p);
    return d;
  };
}

double shannon_pd0(double pb, double H) {
  check_pb(pb);
  require(H > 0.0, Err::BadParameter, "source entropy must be positive");
  if (pb == 0.0) return 0.0;
  const double h = binary_entropy(pb);
  return 1.0 - std::exp2(-H * h / (1.0 - h));
}

namespace {

// G = max over p of h(p) - lg(e)/(2 pb (1-pb)) (p - pb)^2, the exponent that
// dominates how many same-or-fewer-flip corrections survive to a given depth.
double concentration_penalized_max(double pb) {
  const double scale = std::log2(std::exp(1.0)) / (pb * (1.0 - pb));
  // g'(p) = lg((1-p)/p) - scale*(p - pb): positive at pb, negative at 1/2
  double lo = pb, hi = 0.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double slope = std::log2((1.0 - mid) / mid) - scale * (mid - pb);
    (slope > 0.0 ? lo : hi) = mid;
  }
  const double p = 0.5 * (lo + hi);
  return binary_entropy(p) - 0.5 * scale * (p - pb) * (p - pb);
}

}  // namespace

double practical_pd1(double pb, double H) {
  check_pb(pb);
  require(H > 0.0, Err::BadParameter, "source entropy must be positive");
  if (pb == 0.0) return 0.0;
  const double G = concentration_penalized_max(pb);
  require(G < 1.0, Err::NoConvergence, "penalized entropy maximum reached 1");
  return 1.0 - std::exp2(-H * G / (1.0 - G));
}

double tree_pd2_approx(double pb, double H) {
  check_pb(pb);
  require(H > 0.0, Err::BadParameter, "source entropy must be positive");
  if (pb == 0.0) return 0.0;
  const double lgC = std::log2(std::sqrt(pb) + std::sqrt(1.0 - pb));
  // self-consistent closed form of pd = 1 - C^{-2(H - lg(1-pd))}
  return 1.0 - std::exp2(2.0 * H * lgC / (2.0 * lgC - 1.0));
}

double tree_pd2(double pb, double H, const BlockLengthFn& lengths, BlockLengthDist* dist_out) {
  check_pb(pb);
  if (!lengths) {
    const double pd = tree_pd2_approx(pb, H);
    if (dist_out) *dist_out = constant_block_length(H - std::log2(1.0 - pd));
    return pd;
  }
  const double C = std::sqrt(pb) + std::sqrt(1.0 - pb);
  double pd = tree_pd2_approx(pb, H);
  BlockLengthDist dist;
  double best_residual = 1e9, best_pd = pd;
  BlockLengthDist best_dist;
  for (int iter = 0; iter < 128; ++iter) {
    dist = lengths(pd);
    double sum = 0.0;
    for (const auto& [a, p] : dist.atoms) sum += p * std::pow(C, a);
    const double next = 1.0 - 1.0 / (sum * sum);
    const double residual = std::abs(next - pd);
    if (residual < best_residual) {
      best_residual = residual;
      best_pd = next;
      best_dist = dist;
    }
    if (residual < 1e-12) break;
    pd = 0.5 * (pd + next);  // damped; the quantized model makes the map piecewise constant
  }
  require(best_residual < 1e-3, Err::NoConvergence,
          "block-length fixed point for the width threshold did not converge");
  if (dist_out) *dist_out = best_dist;
  return best_pd;
}

Thresholds compute_thresholds(double pb, double H, const BlockLengthFn& lengths) {
  Thresholds t;
  t.pd0 = shannon_pd0(pb, H);
  t.pd1 = practical_pd1(pb, H);
  t.pd2 = tree_pd2(pb, H, lengths);
  return t;
}

namespace {

double drop_equation(double v, double pb, double pd, const BlockLengthDist& lengths) {
  const double qd = 1.0 - pd;
  double rhs = 0.0;
  for (const auto& [a, p] : lengths.atoms)
    rhs += p * std::pow(std::pow(pb, v + 1.0) + std::pow(1.0 - pb, v + 1.0), a);
  return std::pow(qd, v) - rhs;
}

double subtree_equation(double u, double pb, double pd, const BlockLengthDist& lengths) {
  const double qd = 1.0 - pd;
  double rhs = 0.0;
  for (const auto& [a, p] : lengths.atoms)
    rhs += p * std::pow(std::pow(pb, u) + std::pow(1.0 - pb, u), a);
  return std::pow(qd, u - 1.0) - rhs;
}

// Bisects for the root of f strictly below `known_root`, scanning downward
// for the bracketing sign change first.
template <typename F>
double root_below(F f, double known_root, double lowest, Err no_root_err,
                  const char* no_root_msg) {
  const double step = 1.0 / 64.0;
  double hi = known_root - 1e-9;
  require(f(hi) > 0.0, no_root_err, no_root_msg);
  double lo = hi;
  bool bracketed = false;
  while (lo > lowest) {
    lo = std::max(lowest, lo - step);
    if (f(lo) <= 0.0) {
      bracketed = true;
      break;
    }
    hi = lo;
  }
  require(bracketed, Err::NoConvergence, "no sign change found above the scan floor");
  for (int i = 0; i < 120; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) <= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double drop_root_v(double pb, double pd, const BlockLengthDist& lengths) {
  check_pb(pb);
  require(pb > 0.0, Err::BadParameter, "noiseless channel has no drop tail");
  require(pd > 0.0 && pd < 1.0, Err::BadParameter, "forbidden probability must lie in (0,1)");
  // the negative root emerges exactly when the per-step weight drift turns
  // positive: -lg(1-pd) > mean_bits * h(pb)
  const double drift = -std::log2(1.0 - pd) - lengths.mean() * binary_entropy(pb);
  require(drift > 0.0, Err::NoNegativeRoot,
          "only the v = 0 root exists at this forbidden probability");
  return root_below([&](double v) { return drop_equation(v, pb, pd, lengths); }, 0.0, -8.0,
                    Err::NoNegativeRoot, "only the v = 0 root exists at this forbidden probability");
}

double subtree_root_u(double pb, double pd, const BlockLengthDist& lengths) {
  check_pb(pb);
  require(pb > 0.0, Err::BadParameter, "noiseless channel has no subtree tail");
  require(pd > 0.0 && pd < 1.0, Err::BadParameter, "forbidden probability must lie in (0,1)");
  const double drift = -std::log2(1.0 - pd) - lengths.mean() * binary_entropy(pb);
  require(drift > 0.0, Err::NoNegativeRoot,
          "only the u = 1 root exists at this forbidden probability");
  return root_below([&](double u) { return subtree_equation(u, pb, pd, lengths); }, 1.0, -7.0,
                    Err::NoNegativeRoot, "only the u = 1 root exists at this forbidden probability");
}

WidthCheck expected_tree_width_finite(double pb, double pd, const BlockLengthDist& lengths) {
  const double v = drop_root_v(pb, pd, lengths);
  return {v < -0.5, v};
}

}  // namespace ansx
