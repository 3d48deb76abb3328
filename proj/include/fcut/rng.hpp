#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace fcut {

// SplitMix64 finalizer. Used both as the generator step and to hash
// stream keys into independent seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives a substream seed from a base seed and an ordered key path, e.g.
// derive_seed(seed, {cell, replicate, attempt}). Each key is folded in with a
// distinct golden-ratio offset so that {1,2} and {2,1} differ.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix64(base + 0x9e3779b97f4a7c15ULL);
  std::uint64_t k = 1;
  for (std::uint64_t key : keys) {
    h = mix64(h ^ mix64(key + k * 0x9e3779b97f4a7c15ULL));
    ++k;
  }
  return h;
}

// SplitMix64 generator: 64-bit state, one output per increment. Satisfies
// UniformRandomBitGenerator, but the helpers below are used instead of the
// std distributions so that streams are identical across standard libraries.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer on [0, n) by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace fcut
