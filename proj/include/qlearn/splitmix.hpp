#pragma once

#include <cstdint>

namespace qlearn {

// Deterministic 64-bit PRNG (splitmix64). Every random choice in the library
// flows from one of these so that a run is reproducible bit-for-bit from a
// single seed across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound). bound must be nonzero. Plain modulo: the
  // bias is < bound/2^64, far below anything our statistics can resolve, and
  // it keeps the stream identical across implementations.
  uint64_t next_below(uint64_t bound) { return next() % bound; }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Independent child stream; advances this stream by one step.
  SplitMix64 fork() { return SplitMix64(next()); }

 private:
  uint64_t state_;
};

}  // namespace qlearn
