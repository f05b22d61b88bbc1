#pragma once

#include <cstdint>

namespace qdist {

// Resource caps. Exceeding one raises CapExceeded; nothing is truncated.
inline constexpr std::uint32_t kMaxPrime = 10'000;
inline constexpr int kMaxDegree = 3;
inline constexpr std::uint64_t kMaxFieldSize = 1'000'000;
inline constexpr std::uint64_t kEnumCap = 10'000'000;     // points enumerated or transformed
inline constexpr std::uint64_t kPairCap = 100'000'000;    // ordered pairs counted
inline constexpr std::uint64_t kTripleCap = 1'000'000'000;
inline constexpr std::uint64_t kDftWorkCap = 4'000'000'000;  // d * q^(d+1) multiply-adds
inline constexpr std::uint64_t kGridCap = 100'000'000;    // q^3 terms for full (a,b) grids
inline constexpr std::uint32_t kDenseTableMaxQ = 1024;    // q*q lookup tables below this

// Absolute tolerance for a floating sum of `terms` unit-modulus summands.
inline constexpr double tau(double terms) { return 1e-10 * terms; }

}  // namespace qdist
