#include "ansx/abs.hpp"

#include <cmath>

namespace ansx {

namespace {

void check(const BinaryProb& q) {
  require(q.precision_bits >= 1 && q.precision_bits <= 32, Err::BadParameter,
          "probability precision must be 1..32 bits");
  const u64 one = u64(1) << q.precision_bits;
  require(q.numerator > 0 && q.numerator < one, Err::BadParameter,
          "probability must lie strictly inside (0,1)");
}

}  // namespace

BinaryProb BinaryProb::from_double(double q, u32 bits) {
  require(bits >= 1 && bits <= 32, Err::BadParameter, "precision must be 1..32 bits");
  require(q > 0.0 && q < 1.0 && std::isfinite(q), Err::BadParameter,
          "probability must lie strictly inside (0,1)");
  const u64 one = u64(1) << bits;
  u64 f = static_cast<u64>(std::llround(q * static_cast<double>(one)));
  if (f == 0) f = 1;
  if (f >= one) f = one - 1;
  return {static_cast<u32>(f), bits};
}

BinaryProb BinaryProb::from_fraction(u64 num, u64 den, u32 bits) {
  require(bits >= 1 && bits <= 32, Err::BadParameter, "precision must be 1..32 bits");
  require(den > 0 && num > 0 && num < den, Err::BadParameter,
          "fraction must lie strictly inside (0,1)");
  u128 f = (static_cast<u128>(num) << bits) / den;
  if (f == 0) f = 1;
  return {static_cast<u32>(f), bits};
}

AbsDecoded abs_decode(u32 x, BinaryProb q, AbsVariant v) {
  check(q);
  const u32 P = q.precision_bits;
  const u64 f = q.numerator;
  // Rounded x*q and (x+1)*q; the number of ones below x jumps exactly where
  // the rounded product increments.
  u64 lo, hi;
  if (v == AbsVariant::Ceiling) {
    const u64 bias = (u64(1) << P) - 1;
    lo = (u64(x) * f + bias) >> P;
    hi = ((u64(x) + 1) * f + bias) >> P;
  } else {
    lo = (u64(x) * f) >> P;
    hi = ((u64(x) + 1) * f) >> P;
  }
  const u32 bit = static_cast<u32>(hi - lo);
  const u32 sub = bit ? static_cast<u32>(lo) : x - static_cast<u32>(lo);
  return {bit, sub};
}

u32 abs_encode(u32 bit, u32 sub_state, BinaryProb q, AbsVariant v) {
  check(q);
  require(bit <= 1, Err::BadParameter, "symbol must be a bit");
  const u32 P = q.precision_bits;
  const u128 one = u128(1) << P;
  const u128 f = q.numerator;   // q scaled by 2^P
  const u128 g = one - f;       // 1-q scaled by 2^P
  const u128 xs = sub_state;
  // ceil(a/b)-1 == (a-1)/b for a >= 1; 128-bit intermediates keep the
  // ceiling paths exact for the whole 32-bit sub-state range.
  u128 x;
  if (v == AbsVariant::Ceiling) {
    if (bit)
      x = (xs << P) / f;               // floor(xs / q)
    else
      x = (((xs + 1) << P) - 1) / g;   // ceil((xs+1) / (1-q)) - 1
  } else {
    if (bit)
      x = (((xs + 1) << P) - 1) / f;   // ceil((xs+1) / q) - 1
    else
      x = (xs << P) / g;               // floor(xs / (1-q))
  }
  require(x <= 0xFFFFFFFFull, Err::BadParameter, "encoded state exceeds the 32-bit range");
  return static_cast<u32>(x);
}

}  // namespace ansx
