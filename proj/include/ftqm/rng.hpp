#pragma once

#include <cstdint>

namespace ftqm::rng {

// Counter-based splittable stream built on the SplitMix64 finalizer.
// A (seed, stream_index) pair deterministically fixes the whole substream,
// so per-trial substreams reproduce independently of thread scheduling.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(bootstrap(seed, 0)) {}

  static Stream substream(std::uint64_t seed, std::uint64_t index) {
    Stream s(0);
    s.state_ = bootstrap(seed, index);
    return s;
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return finalize(state_);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Degenerate probabilities consume no randomness; keeps substreams aligned
  // when a parameter is exactly zero (e.g. a disabled noise term).
  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return next_double() < p;
  }

 private:
  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t bootstrap(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = finalize(seed + 0x9E3779B97F4A7C15ULL);
    s ^= finalize(index + 0xD1B54A32D192ED03ULL);
    return finalize(s);
  }

  std::uint64_t state_;
};

}  // namespace ftqm::rng
