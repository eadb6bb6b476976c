#include "gconv/random.hpp"

#include <cmath>
#include <numbers>

namespace gconv {

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() noexcept {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept { return bound == 0 ? 0 : next() % bound; }

std::vector<double> normal_vector(SplitMix64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

ChannelSignal random_signal(SplitMix64& rng, GroupPtr group, std::size_t channels) {
  const std::size_t n = channels * group->size();
  return ChannelSignal(std::move(group), channels, normal_vector(rng, n));
}

}  // namespace gconv
