#pragma once

#include <cstdint>
#include <random>

namespace anacomp {

// SplitMix64 finalizer. Used as the fixed 64-bit hash that mixes stream
// identifiers into a base seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed for an independent stream, e.g. (base, n, trial). Order of the
// stream ids matters; the derivation does not depend on evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                    std::uint64_t b = 0) noexcept {
  return splitmix64(splitmix64(splitmix64(base) ^ (a + 0x632BE59BD9B4E019ULL)) ^
                    (b + 0x85157AF5ULL));
}

using Rng = std::mt19937_64;

// Uniform index in [0, k). mt19937_64 output is fully specified by the
// standard, so this stays reproducible across standard libraries.
inline std::size_t uniform_index(Rng& rng, std::size_t k) {
  return static_cast<std::size_t>(rng() % k);
}

// Uniform real in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace anacomp
