#pragma once

#include <cstdint>
#include <vector>

#include "gconv/signal.hpp"

namespace gconv {

/// SplitMix64 (Steele, Lea, Flood 2014). The sequence for a given seed is part
/// of the file/CLI contract:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)
/// uniform():  (next() >> 11) * 2^-53, in [0, 1)
/// normal():   Box-Muller, one draw per call:
///             sqrt(-2 ln(1 - u1)) * cos(2 pi u2) with u1, u2 = uniform()
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  double normal() noexcept;
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

/// Standard-normal entries.
std::vector<double> normal_vector(SplitMix64& rng, std::size_t n);
ChannelSignal random_signal(SplitMix64& rng, GroupPtr group, std::size_t channels);

}  // namespace gconv
