#pragma once

#include <span>
#include <vector>

#include "ansx/common.hpp"

namespace ansx {

// Quantized symbol distribution: per-symbol counts over a total of
// `total` slots, with total = base^L for some integer L >= 1 and
// base a power of two. q_s = count(s) / total.
class SymbolModel {
public:
  SymbolModel(u32 base, u32 total, std::vector<u32> counts);

  // Rounds probabilities to counts >= 1 summing to `total`, minimizing
  // sum_s |count_s - p_s*total|. Ties go to the larger probability, then to
  // the smaller symbol index.
  static SymbolModel quantize(std::span<const double> probs, u32 base, u32 total);
  // Same, but every count is even (quantizes at half resolution and doubles).
  static SymbolModel quantize_even(std::span<const double> probs, u32 base, u32 total);

  u32 base() const { return base_; }
  u32 radix_bits() const { return radix_bits_; }  // base = 2^radix_bits
  u32 total() const { return total_; }
  u32 alphabet_size() const { return static_cast<u32>(counts_.size()); }
  const std::vector<u32>& counts() const { return counts_; }
  u32 count(u32 s) const { return counts_[s]; }
  double prob(u32 s) const { return static_cast<double>(counts_[s]) / total_; }
  std::vector<double> probs() const;

  bool operator==(const SymbolModel&) const = default;

private:
  u32 base_;
  u32 radix_bits_;
  u32 total_;
  std::vector<u32> counts_;
};

}  // namespace ansx
