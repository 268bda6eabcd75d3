#pragma once

#include <cstdint>

// Counter-based deterministic randomness. Every draw is a pure function of
// (seed, stream, counter), so paired simulations can share randomness and
// replicates can run in any order or in parallel.

namespace firesim {

// splitmix64 finalizer; full avalanche on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash3(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return mix64(mix64(mix64(seed) ^ stream) ^ counter);
}

// Uniform double in [0, 1) with 53 random bits.
constexpr double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

constexpr double hash_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return uniform01(hash3(seed, stream, counter));
}

// Independent sub-seed for replicate or salt `index`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ (index + 0x2545f4914f6cdd1dULL));
}

}  // namespace firesim
