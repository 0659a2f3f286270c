#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

namespace mstn {

// All randomness in the project flows through one seeded generator so runs
// are reproducible bit for bit.  Sampling helpers avoid std::*_distribution
// on purpose: their output is implementation-defined, ours is not.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1), 53 random bits.
inline double uniform_unit(Rng& rng) {
  return std::ldexp(static_cast<double>(rng() >> 11), -53);
}

inline double uniform_range(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

/// Unbiased integer in [0, n). n must be > 0.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return static_cast<std::size_t>(x % bound);
}

}  // namespace mstn
