#pragma once

#include <cstdint>
#include <limits>

namespace samestats {

// SplitMix64 used in counter mode: the i-th output is mix(key + i * gamma),
// a pure function of (key, i). split(s) derives an independent key for
// substream s, so per-draw streams can be built from (seed, draw index) and
// sampled in any order or on any number of workers. This is the only
// generator used in the repository.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return mix(key_ + (++counter_) * kGamma); }

  CounterRng split(std::uint64_t stream) const noexcept {
    return CounterRng(mix(key_ ^ mix(stream * kGamma + 0xD1B54A32D192ED03ULL)));
  }

  // Uniform on [0,1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound >= 1, by rejection of the biased tail.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t x = (*this)();
    while (x < threshold) x = (*this)();
    return x % bound;
  }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace samestats
