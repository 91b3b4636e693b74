#pragma once

#include <cstdint>
#include <span>

namespace multipeak {

/// Counter-based generator (splitmix64). Chosen over <random> engines because
/// every draw, including the bounded ones below, must be bit-reproducible
/// across platforms and standard-library versions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Unbiased draw from {0, ..., n-1} by rejection.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = -n % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream key from a seed and up to two indices, so
/// that substreams (per tuple, per partition, per trial) never overlap.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a = 0,
                                 std::uint64_t b = 0) {
  SplitMix64 g(seed ^ (0xD1B54A32D192ED03ULL * (a + 1)) ^
               (0x8CB92BA72F3D8DD7ULL * (b + 1)));
  return g.next();
}

/// In-place Fisher-Yates shuffle driven by the given stream.
template <typename T>
void shuffle(std::span<T> values, SplitMix64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace multipeak
