#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace shiftreg {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Key of the independent stream number `index` under `master_seed`.
/// Trial i of every experiment draws exclusively from
/// derive_stream(master_seed, i), so results do not depend on scheduling.
constexpr std::uint64_t derive_stream(std::uint64_t master_seed,
                                      std::uint64_t index) noexcept {
  return mix64(mix64(master_seed) ^ mix64(index + 0xD1B54A32D192ED03ULL));
}

/// Counter-based generator: output k is mix64(key + k * gamma).
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  std::uint64_t key() const noexcept { return key_; }

  double normal() { return normal_(*this); }
  double uniform() { return uniform_(*this); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace shiftreg
