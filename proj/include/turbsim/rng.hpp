#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace turbsim {

/// SplitMix64 output finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// 64-bit FNV-1a, used to turn stream labels into words.
constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed of the sub-stream `label` of `seed`.
constexpr std::uint64_t substream_seed(std::uint64_t seed,
                                       std::string_view label) {
  return mix64(mix64(seed) ^ fnv1a64(label));
}

/// Seeded random stream with platform-independent output.
///
/// The engine is std::mt19937_64, whose sequence the standard fixes. The
/// standard distributions are implementation-defined, so the uniform and
/// normal draws are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Independent stream derived from this stream's seed and a label.
  /// Does not consume state from this stream.
  Rng split(std::string_view label) const {
    return Rng(substream_seed(seed_, label));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), unbiased. n must be positive.
  std::uint64_t uniform_below(std::uint64_t n);

  /// Standard normal draw (Marsaglia polar method).
  double normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace turbsim
