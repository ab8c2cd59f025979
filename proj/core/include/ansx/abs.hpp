#pragma once

#include "ansx/common.hpp"

namespace ansx {

// Fixed-point binary probability q = numerator / 2^precision_bits.
// All coding arithmetic on it is exact integer arithmetic; no floating point
// ever touches the codec path.
struct BinaryProb {
  u32 numerator = 0;
  u32 precision_bits = 32;

  // Nearest representable value.
  static BinaryProb from_double(double q, u32 bits = 32);
  // Truncating num/den. Truncation keeps the ceiling-variant tables of a
  // rational q aligned with the exact rational for all states below
  // 2^bits / den; rounding up breaks them at every multiple of den/gcd.
  static BinaryProb from_fraction(u64 num, u64 den, u32 bits = 32);

  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(u64(1) << precision_bits);
  }
};

enum class AbsVariant { Ceiling, Floor };

struct AbsDecoded {
  u32 bit;        // decoded symbol
  u32 sub_state;  // x_s
};

// Splits state x into (bit, sub_state). Total on valid inputs.
AbsDecoded abs_decode(u32 x, BinaryProb q, AbsVariant v = AbsVariant::Ceiling);

// Inverse of abs_decode: abs_encode(d.bit, d.sub_state) == x.
u32 abs_encode(u32 bit, u32 sub_state, BinaryProb q, AbsVariant v = AbsVariant::Ceiling);

}  // namespace ansx
