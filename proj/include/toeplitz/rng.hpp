#pragma once

#include <cstdint>

namespace toeplitz {

/// Counter-based SplitMix64: the value for index k is the SplitMix64 output
/// of state seed + (k + 1) * 0x9E3779B97F4A7C15, so every coordinate of a
/// random vector is reproducible on its own, independent of evaluation order.
inline std::uint64_t splitmix64(std::uint64_t seed, std::int64_t index) {
  std::uint64_t z = seed + (static_cast<std::uint64_t>(index) + 1u) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Uniform on [-1, 1) from the top 53 bits.
inline double uniform_pm1(std::uint64_t seed, std::int64_t index) {
  const double u = static_cast<double>(splitmix64(seed, index) >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

}  // namespace toeplitz
