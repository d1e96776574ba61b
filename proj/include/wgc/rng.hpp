#pragma once

#include <cstdint>

namespace wgc {

// SplitMix64 (Steele/Lea/Vigna). Chosen because the output stream is
// fully determined by the seed and the three shift/multiply constants
// below, so generated graphs and benchmark samples are reproducible
// across platforms and standard library versions.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound) via modulo; the bias is negligible for the
  // bounds used here (far below 2^64) and keeps the mapping trivial to
  // reproduce.
  uint64_t next_below(uint64_t bound) { return bound ? next() % bound : 0; }

 private:
  uint64_t state_;
};

}  // namespace wgc
