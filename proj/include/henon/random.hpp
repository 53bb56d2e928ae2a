#pragma once

#include <cstdint>
#include <random>

namespace henon {

/// Stateless seed mixer (splitmix64). Used to derive independent streams
/// from a base seed so that partitioned workers stay reproducible.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic uniform generator. Doubles are built from raw mt19937_64
/// bits instead of std::uniform_real_distribution, whose output is
/// implementation-defined; identical seeds give identical streams anywhere.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// +1 or -1 with equal probability.
  double sign() { return (gen_() & 1u) ? 1.0 : -1.0; }

  /// Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n) { return gen_() % n; }

  std::uint64_t bits() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace henon
