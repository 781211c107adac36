#pragma once

#include <cstdint>

namespace uag {

// 64-bit multiplicative congruential stream.  The update rule and the
// multiplier are fixed and documented in the README so that a seed produces
// the same sequence everywhere; do not change them.
class Mcg64 {
 public:
  explicit Mcg64(std::uint64_t seed) : state_(2 * seed + 1) {}

  std::uint64_t next() {
    state_ *= 6364136223846793005ULL;
    return state_;
  }

  // Uniform in [0, 1) with 53 mantissa bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace uag
