#pragma once

#include "ansx/common.hpp"

namespace ansx {

// SplitMix64. One fixed, trivially portable generator so that tables, mask
// lists and simulations are reproducible bit-for-bit across platforms.
struct PrngResult {
  u64 state;
  u64 value;
};

inline PrngResult prng_next(u64 state) {
  state += 0x9E3779B97F4A7C15ull;
  u64 z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return {state, z ^ (z >> 31)};
}

class Splitmix {
public:
  explicit Splitmix(u64 seed) : state_(seed) {}

  u64 next() {
    PrngResult r = prng_next(state_);
    state_ = r.state;
    return r.value;
  }

  // Index in {1, .., m}.
  u64 next_index(u64 m) { return 1 + next() % m; }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool next_bernoulli(double p) { return next_unit() < p; }

private:
  u64 state_;
};

}  // namespace ansx
