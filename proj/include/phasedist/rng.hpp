#pragma once

#include <cstdint>

namespace phasedist {

// SplitMix64 (Steele, Lea, Flood 2014). Output sequence is fixed by the
// algorithm alone, so corpora reproduce bit-for-bit on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  /// Independent stream for item `index` of a corpus seeded with `seed`.
  static SplitMix64 for_item(std::uint64_t seed, std::uint64_t index) noexcept {
    SplitMix64 mixer(seed ^ (index * 0xD1B54A32D192ED03ull));
    return SplitMix64(mixer.next() ^ index);
  }

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) built from the top 53 bits.
  double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

 private:
  std::uint64_t state_;
};

}  // namespace phasedist
