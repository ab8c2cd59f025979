#include "ansx/model.hpp"

#include <bit>
#include <cmath>
#include <numeric>

namespace ansx {

namespace {

u32 log2_exact(u32 v) {
  return static_cast<u32>(std::countr_zero(v));
}

bool is_power_of(u64 value, u64 base) {
  while (value % base == 0) value /= base;
  return value == 1;
}

std::vector<u32> round_counts(std::span<const double> probs, u32 total) {
  const size_t n = probs.size();
  require(n >= 1, Err::BadDistribution, "empty distribution");
  require(n <= 0xFFFF, Err::AlphabetTooLarge, "alphabet larger than 65535 symbols");
  require(n <= total, Err::AlphabetTooLarge, "alphabet larger than the state budget");

  double sum = 0.0;
  for (double p : probs) {
    require(std::isfinite(p) && p > 0.0, Err::BadDistribution,
            "probabilities must be finite and positive");
    sum += p;
  }
  require(sum > 0.0, Err::BadDistribution, "probabilities sum to zero");

  std::vector<double> target(n);
  for (size_t s = 0; s < n; ++s) target[s] = probs[s] / sum * total;

  std::vector<u32> counts(n);
  u64 assigned = 0;
  for (size_t s = 0; s < n; ++s) {
    u64 c = static_cast<u64>(std::floor(target[s]));
    if (c < 1) c = 1;
    counts[s] = static_cast<u32>(c);
    assigned += c;
  }

  // |count - target| is convex in the count, so greedy unit moves reach the
  // optimum. Ties keep the extra slot on the larger probability, then on the
  // smaller index.
  const double eps = 1e-12;
  while (assigned < total) {
    size_t best = 0;
    for (size_t s = 1; s < n; ++s) {
      const double gain_s = target[s] - counts[s];
      const double gain_b = target[best] - counts[best];
      if (gain_s > gain_b + eps) {
        best = s;
      } else if (gain_s > gain_b - eps && probs[s] > probs[best]) {
        best = s;
      }
    }
    ++counts[best];
    ++assigned;
  }
  while (assigned > total) {
    size_t best = n;
    for (size_t s = 0; s < n; ++s) {
      if (counts[s] < 2) continue;
      if (best == n) {
        best = s;
        continue;
      }
      const double excess_s = counts[s] - target[s];
      const double excess_b = counts[best] - target[best];
      if (excess_s > excess_b + eps) {
        best = s;
      } else if (excess_s > excess_b - eps && probs[s] <= probs[best]) {
        // equal error: shrink the smaller probability; equal probabilities
        // shrink the larger index so the smaller index keeps its slot
        best = s;
      }
    }
    require(best < n, Err::BadDistribution, "cannot reduce counts to the requested total");
    --counts[best];
    --assigned;
  }
  return counts;
}

}  // namespace

SymbolModel::SymbolModel(u32 base, u32 total, std::vector<u32> counts)
    : base_(base), total_(total), counts_(std::move(counts)) {
  require(base_ >= 2 && std::has_single_bit(base_), Err::BadParameter,
          "base must be a power of two >= 2");
  radix_bits_ = log2_exact(base_);
  require(total_ >= base_ && is_power_of(total_, base_), Err::BadParameter,
          "total must be an exact positive power of the base");
  require(static_cast<u64>(total_) * base_ <= (u64(1) << 32), Err::BadParameter,
          "total*base exceeds the 32-bit state budget");
  require(!counts_.empty(), Err::BadDistribution, "empty alphabet");
  require(counts_.size() <= 0xFFFF, Err::AlphabetTooLarge, "alphabet larger than 65535 symbols");
  require(counts_.size() <= total_, Err::AlphabetTooLarge, "alphabet larger than the state budget");
  u64 sum = 0;
  for (u32 c : counts_) {
    require(c >= 1, Err::BadDistribution, "every symbol needs at least one slot");
    sum += c;
  }
  require(sum == total_, Err::BadDistribution, "counts must sum to the total");
}

SymbolModel SymbolModel::quantize(std::span<const double> probs, u32 base, u32 total) {
  return SymbolModel(base, total, round_counts(probs, total));
}

SymbolModel SymbolModel::quantize_even(std::span<const double> probs, u32 base, u32 total) {
  require(total % 2 == 0, Err::BadParameter, "even quantization needs an even total");
  require(probs.size() <= total / 2, Err::AlphabetTooLarge,
          "alphabet larger than half the state budget");
  std::vector<u32> counts = round_counts(probs, total / 2);
  for (u32& c : counts) c *= 2;
  return SymbolModel(base, total, std::move(counts));
}

std::vector<double> SymbolModel::probs() const {
  std::vector<double> p(counts_.size());
  for (size_t s = 0; s < counts_.size(); ++s) p[s] = prob(static_cast<u32>(s));
  return p;
}

}  // namespace ansx
