#pragma once

#include <span>
#include <vector>

#include "ansx/common.hpp"

namespace ansx {

// Cyclic list of XOR masks applied to the digit block of each coding step.
// One mask per step; bits above the step's transferred width are ignored.
struct MaskList {
  std::vector<u32> masks;

  static MaskList from_seed(u64 seed, u32 count);

  bool empty() const { return masks.empty(); }
  u32 size() const { return static_cast<u32>(masks.size()); }
};

// Cyclic table of bits extending the coder state. Each coding step swaps the
// youngest state bit with one table entry, so the reachable state count
// multiplies by 2^length. Requires every symbol count to be even.
class BitTable {
public:
  BitTable() = default;
  explicit BitTable(u32 length);  // zero-initialized
  BitTable(u32 length, std::span<const u8> packed);

  u32 length() const { return length_; }
  bool empty() const { return length_ == 0; }

  bool get(u32 i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(u32 i, bool v) {
    const u64 mask = u64(1) << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  bool all_zero() const;

  // Entry `first` becomes index 0. Storing the table rotated by the final
  // position lets decoding always start at position 0.
  BitTable rotated(u32 first) const;

  std::vector<u8> packed() const;

  bool operator==(const BitTable&) const = default;

private:
  u32 length_ = 0;
  std::vector<u64> words_;
};

struct HardeningConfig {
  MaskList masks;          // empty = no masking
  BitTable initial_table;  // empty = no state extension
};

}  // namespace ansx
