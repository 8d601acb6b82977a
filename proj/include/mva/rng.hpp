#pragma once

#include <cstdint>

namespace mva {

// Deterministic generator used for every randomized campaign; the seed and
// this algorithm name are echoed in reports so runs can be replayed.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform enough for fuzzing; bias is irrelevant at these ranges
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

}  // namespace mva
