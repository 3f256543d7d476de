// Counter-based random stream keyed on (seed, stream index).
//
// Output k of stream s is a SplitMix64 finalizer applied to key(seed, s) + k·γ,
// so any trial's draws can be reproduced without replaying earlier trials.
#pragma once

#include <cstdint>
#include <limits>

namespace qeraser {

std::uint64_t splitmix64_mix(std::uint64_t z);

class Rng {
 public:
  using result_type = std::uint64_t;

  Rng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, n), unbiased.
  std::uint32_t below(std::uint32_t n);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qeraser
