#pragma once

#include <cstdint>

namespace quanneal {

/// Counter-based splittable PRNG (SplitMix64, Steele et al.).
///
/// Chosen over std::mt19937 because its output is fully specified by the
/// 64-bit seed and a handful of integer operations, so coupling instances,
/// Born samples and trajectory streams are bit-identical across platforms
/// and standard-library implementations. derive(key) produces a statistically
/// independent substream; substreams are stable under reordering, which keeps
/// multi-threaded sweeps deterministic.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed), state_(seed) {}

  /// Next 64 uniformly distributed bits.
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 significant bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  /// Uniform integer in [0, bound). bound must be > 0; rejection-free
  /// modulo reduction is fine here since bounds are tiny (<= 16).
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  /// Independent substream identified by (seed, key).
  SplitMix64 derive(std::uint64_t key) const {
    return SplitMix64(mix(seed_ + 0x9E3779B97F4A7C15ULL * (key + 1)));
  }

  std::uint64_t seed() const { return seed_; }

  /// SplitMix64 finalizer; also used as a stable 64-bit mixer elsewhere.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace quanneal
