#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gconv/error.hpp"
#include "gconv/random.hpp"
#include "gconv/signal.hpp"
#include "support.hpp"

namespace gconv {
namespace {

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

TEST(ChannelSignal, ChannelMajorLayout) {
  const auto z2 = make_cyclic(2);
  const ChannelSignal x(z2, 2, {1, 2, 3, 4});
  EXPECT_EQ(vec(x.get_channel(2).values()), (std::vector<double>{3, 4}));
  EXPECT_EQ(vec(x.get_channel(1).values()), (std::vector<double>{1, 2}));
  EXPECT_THROW(x.get_channel(0), InvalidParameter);
  EXPECT_THROW(x.get_channel(3), InvalidParameter);

  const ChannelSignal single(z2, 1, {7, 8});
  EXPECT_EQ(vec(single.get_channel(1).values()), (std::vector<double>{7, 8}));
  EXPECT_THROW(ChannelSignal(z2, 2, {1, 2, 3}), IncompatibleOperands);
}

TEST(ChannelSignal, SetGetRoundTrip) {
  const auto z3 = make_cyclic(3);
  SplitMix64 rng(2);
  auto x = ChannelSignal::zeros(z3, 3);
  std::vector<GroupSignal> rows;
  for (std::size_t i = 1; i <= 3; ++i) {
    rows.emplace_back(z3, normal_vector(rng, 3));
    x.set_channel(i, rows.back());
  }
  for (std::size_t i = 1; i <= 3; ++i) EXPECT_EQ(vec(x.get_channel(i).values()), vec(rows[i - 1].values()));
}

TEST(Project, Examples) {
  const auto z2 = make_cyclic(2);
  const ChannelSignal x(z2, 2, {1, 2, 3, 4});
  EXPECT_EQ(project(x, 0), (std::vector<double>{1, 3}));
  EXPECT_THROW(project(x, 2), InvalidParameter);

  const auto z1 = make_cyclic(1);
  const ChannelSignal y(z1, 3, {4, 5, 6});
  EXPECT_EQ(project(y, 0), (std::vector<double>{4, 5, 6}));
}

TEST(Project, ShiftedIdentityComponent) {
  const auto z3 = make_cyclic(3);
  SplitMix64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_signal(rng, z3, 2);
    for (Element g = 0; g < 3; ++g) EXPECT_EQ(project(shift_vectorized(g, x), 0), project(x, z3->inverse(g)));
  }
}

TEST(ShiftVectorized, PerChannel) {
  const auto z3 = make_cyclic(3);
  const ChannelSignal x(z3, 2, {1, 2, 3, 10, 20, 30});
  EXPECT_EQ(shift_vectorized(0, x), x);
  EXPECT_EQ(vec(shift_vectorized(1, x).values()), (std::vector<double>{3, 1, 2, 30, 10, 20}));
  EXPECT_THROW(shift_vectorized(3, x), InvalidParameter);
}

TEST(ShiftVectorized, CompositionLaw) {
  for (const auto& g : {make_cyclic(3), testing::symmetric3()}) {
    SplitMix64 rng(6);
    const auto x = random_signal(rng, g, 2);
    for (Element a = 0; a < g->size(); ++a)
      for (Element b = 0; b < g->size(); ++b)
        EXPECT_EQ(shift_vectorized(a, shift_vectorized(b, x)), shift_vectorized(g->mul(a, b), x));
  }
}

// A vectorised shift only permutes coordinates.
TEST(ShiftVectorized, IsAPermutation) {
  SplitMix64 rng(8);
  for (const auto& g : testing::small_groups()) {
    const auto x = random_signal(rng, g, 3);
    auto sorted_x = vec(x.values());
    std::sort(sorted_x.begin(), sorted_x.end());
    for (Element s = 0; s < g->size(); ++s) {
      auto y = vec(shift_vectorized(s, x).values());
      std::sort(y.begin(), y.end());
      EXPECT_EQ(y, sorted_x);
      for (const double p : {0.5, 1.0, 2.0, 3.0}) {
        double nx = 0, ny = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
          nx += std::pow(std::abs(sorted_x[i]), p);
          ny += std::pow(std::abs(y[i]), p);
        }
        EXPECT_EQ(nx, ny);
      }
    }
  }
}

}  // namespace
}  // namespace gconv
