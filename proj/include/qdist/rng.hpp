#pragma once

#include <cstdint>
#include <random>

namespace qdist {

// Random streams are built only from std::mt19937_64 raw output so sampled
// sets are identical on every platform (standard distributions are not).

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent seed for sub-stream `k` of a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k) {
  return splitmix64(splitmix64(base) ^ splitmix64(k + 0x632BE59BD9B4E019ULL));
}

/// Uniform integer in [0, n) by rejection; n > 0.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// Uniform integer in [lo, hi].
inline std::uint64_t uniform_between(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + uniform_below(rng, hi - lo + 1);
}

}  // namespace qdist
