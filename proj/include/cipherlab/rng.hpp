#pragma once

#include <cstdint>

namespace cipherlab {

// Deterministic 64-bit generator (splitmix64, Steele/Lea/Flood mixing
// constants). Spelled out here so every stream is reproducible across
// platforms and standard-library versions; std::uniform_* distributions are
// deliberately not used anywhere in this project.
class SplitMix64 {
 public:
  static constexpr const char* kAlgorithmId = "splitmix64";

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

// Stream seed for task `index` under `master`. Used by the Monte Carlo
// driver so results are independent of the worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 g(master ^ (0xA0761D6478BD642Full * (index + 1)));
  return g.next();
}

}  // namespace cipherlab
