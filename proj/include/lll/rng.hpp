#pragma once

// Deterministic random source shared by every sampler and oracle.
//
// std::uniform_int_distribution and friends are implementation-defined, so the
// helpers here draw directly from the 64-bit engine. A run is a pure function
// of (instance, seed) on every standard library.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace lll {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for trial `index` of a batch driven by `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Uniform integer in [0, bound). Rejection sampling, so exactly uniform.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound + 1) % bound;
  std::uint64_t r = rng();
  while (r > limit) r = rng();
  return r % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool fair_bit(Rng& rng) { return (rng() >> 63) != 0; }

/// Index drawn proportionally to nonnegative `weights` (not necessarily normalized).
inline std::size_t sample_weighted(Rng& rng, std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double r = uniform_unit(rng) * total;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    last_positive = k;
    if (r < weights[k]) return k;
    r -= weights[k];
  }
  return last_positive;
}

}  // namespace lll
