#pragma once

#include <cstddef>
#include <random>

namespace streamveil::detail {

// Uniform double in [0, 1) from the top 53 bits; reproducible across standard
// library implementations, unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  auto idx = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
  return idx < n ? idx : n - 1;
}

}  // namespace streamveil::detail
