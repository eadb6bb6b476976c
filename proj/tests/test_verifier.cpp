#include <gtest/gtest.h>

#include <cmath>

#include "gconv/error.hpp"
#include "gconv/numeric.hpp"
#include "gconv/transpiler.hpp"
#include "gconv/verifier.hpp"
#include "support.hpp"

namespace gconv {
namespace {

// x -> x + c on every coordinate, as a one-layer CNN.
CNN offset_cnn(const GroupPtr& g, double c) {
  return CNN(g, {ConvLayer(FilteringMap(g, 1, {GroupSignal::delta(g)}), AffineMap(1, 1, {{0, 0, 1.0}}, {c}))},
             Activation::relu());
}

SampleSet single(const ChannelSignal& x) {
  SampleSet s;
  s.group = x.group();
  s.channels = x.channels();
  s.points = {x};
  return s;
}

TEST(Equivariance, IdentityAndCnnPass) {
  const auto z4 = make_cyclic(4);
  const auto v = check_equivariance(as_evaluable(offset_cnn(z4, 0.0)), SampleSet::random(z4, 1, 5, 1));
  EXPECT_TRUE(v.passed);
  EXPECT_EQ(v.max_deviation, 0.0);
  EXPECT_EQ(v.tested_shifts, 20u);
  EXPECT_FALSE(v.witness);

  SplitMix64 rng(2);
  for (const auto& g : {testing::symmetric3(), make_cyclic(6)}) {
    const auto net = testing::random_cnn(rng, g, 2, 3, 3, 3);
    EXPECT_TRUE(check_equivariance(as_evaluable(net), SampleSet::random(g, 2, 8, 3)).passed);
  }
}

TEST(Equivariance, DenseAffineMapFailsWithWitness) {
  const auto z3 = make_cyclic(3);
  // distinct weights per coordinate: y = diag(1, 2, 3) x
  const AffineMap m(3, 3, {{0, 0, 1.0}, {1, 1, 2.0}, {2, 2, 3.0}}, {0.0, 0.0, 0.0});
  const auto v = check_equivariance(as_evaluable(m, z3, 1, 1), single(ChannelSignal(z3, 1, {1.0, 1.0, 2.0})));
  EXPECT_FALSE(v.passed);
  ASSERT_TRUE(v.witness);
  EXPECT_NE(v.witness->g, 0u);
  EXPECT_GT(v.witness->deviation, 1e-9);
}

TEST(Equivariance, FnnNeedsReshape) {
  const auto z2 = make_cyclic(2);
  const FNN net(z2, 1, {AffineMap::identity(2)}, Activation::relu());
  EXPECT_THROW(check_equivariance(as_evaluable(net), SampleSet::random(z2, 1, 1, 0)), InvalidStructure);
  EXPECT_TRUE(check_equivariance(as_evaluable(net, 1), SampleSet::random(z2, 1, 3, 0)).passed);
  EXPECT_THROW(as_evaluable(net, 3), InvalidStructure);
}

// For an equivariant map, (F)_g = (F)_1 o S_{g^-1}.
TEST(Equivariance, ComponentsFromIdentityCoordinate) {
  SplitMix64 rng(4);
  const auto g = testing::symmetric3();
  const auto net = testing::random_cnn(rng, g, 1, 2, 2, 3);
  const auto x = random_signal(rng, g, 1);
  const auto y = realize_cnn(net, x);
  for (Element e = 0; e < g->size(); ++e) {
    const auto shifted = realize_cnn(net, shift_vectorized(g->inverse(e), x));
    EXPECT_LE(testing::max_rel(project(y, e), project(shifted, 0)), 1e-12);
  }
}

TEST(Symmetrize, Sizes) {
  const auto z2 = make_cyclic(2);
  const auto s = symmetrize(single(ChannelSignal(z2, 1, {1.0, 2.0})));
  EXPECT_TRUE(s.symmetrized);
  ASSERT_EQ(s.points.size(), 2u);
  EXPECT_EQ(s.points[1], ChannelSignal(z2, 1, {2.0, 1.0}));

  const auto z5 = make_cyclic(5);
  const auto c = symmetrize(single(ChannelSignal(z5, 1, std::vector<double>(5, 3.0))));
  ASSERT_EQ(c.points.size(), 5u);
  for (const auto& p : c.points) EXPECT_EQ(p, c.points[0]);

  const auto many = symmetrize(SampleSet::random(z5, 2, 7, 1));
  EXPECT_EQ(many.points.size(), 35u);
}

TEST(Distance, Examples) {
  const auto z2 = make_cyclic(2);
  const auto f = as_evaluable(offset_cnn(z2, 0.0));
  const auto samples = SampleSet::random(z2, 1, 4, 1);
  EXPECT_EQ(empirical_lp_distance(f, f, samples, 2.0), 0.0);

  const auto z1 = make_cyclic(1);
  const auto a = as_evaluable(offset_cnn(z1, 0.0)), b = as_evaluable(offset_cnn(z1, 3.0));
  EXPECT_DOUBLE_EQ(empirical_lp_distance(a, b, single(ChannelSignal(z1, 1, {0.7})), 2.0), 3.0);
  EXPECT_THROW(empirical_lp_distance(a, b, single(ChannelSignal(z1, 1, {0.7})), 0.0), InvalidParameter);
  EXPECT_THROW(empirical_lp_distance(a, b, single(ChannelSignal(z1, 1, {0.7})), -1.0), InvalidParameter);
}

// Against a direct flat computation of the summation convention.
TEST(Distance, MatchesFlatOracle) {
  SplitMix64 rng(5);
  const auto z3 = make_cyclic(3);
  const auto n1 = testing::random_cnn(rng, z3, 2, 2, 3, 3);
  auto layers = n1.layers();
  const auto& last = layers.back();
  layers.back() = ConvLayer(last.filtering(), testing::random_affine(rng, last.out_channels(), last.affine().cols(), 0.7));
  const CNN n2(z3, layers, Activation::relu());
  const auto samples = symmetrize(SampleSet::random(z3, 2, 6, 7));
  for (const double p : {0.5, 1.0, 2.0, 3.0}) {
    double acc = 0.0, acc1 = 0.0;
    for (const auto& x : samples.points) {
      const auto y1 = testing::oracle_realize_cnn(n1, {x.values().begin(), x.values().end()});
      const auto y2 = testing::oracle_realize_cnn(n2, {x.values().begin(), x.values().end()});
      for (std::size_t i = 0; i < y1.size(); ++i) {
        acc += std::pow(std::abs(y1[i] - y2[i]), p);
        if (i % 3 == 0) acc1 += std::pow(std::abs(y1[i] - y2[i]), p);
      }
    }
    EXPECT_LE(relative_gap(empirical_lp_distance(as_evaluable(n1), as_evaluable(n2), samples, p), std::pow(acc, 1 / p)), 1e-10);
    EXPECT_LE(relative_gap(empirical_lp_distance_identity(as_evaluable(n1), as_evaluable(n2), samples, p),
                           std::pow(acc1, 1 / p)),
              1e-10);
  }
}

TEST(NormIdentity, FactorExample) {
  const auto z4 = make_cyclic(4);
  const auto f = as_evaluable(offset_cnn(z4, 0.0)), g = as_evaluable(offset_cnn(z4, 0.5));
  const auto s = symmetrize(single(ChannelSignal(z4, 1, {1.0, -2.0, 0.5, 3.0})));
  const auto r = transfer_norm_identity_check(f, g, s, 2.0);
  EXPECT_DOUBLE_EQ(r.identity_distance, 1.0);
  EXPECT_DOUBLE_EQ(r.lhs, 2.0);
  EXPECT_DOUBLE_EQ(r.factor, 2.0);
  EXPECT_LE(r.relative_gap, 1e-12);

  const auto inf = transfer_norm_identity_check(f, g, s, kInfinity);
  EXPECT_EQ(inf.factor, 1.0);
  EXPECT_EQ(inf.lhs, inf.rhs);
}

TEST(NormIdentity, TranspiledPairs) {
  SplitMix64 rng(6);
  const auto z3 = make_cyclic(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto phi1 = testing::random_fnn(rng, z3, 1, 2, 4);
    auto layers = phi1.layers();
    layers.back() = testing::random_affine(rng, layers.back().rows(), layers.back().cols(), 0.6);
    const FNN phi2(z3, 1, layers, Activation::relu());
    const auto a = fnn_to_cnn(phi1, phi1.output_dim()).cnn, b = fnn_to_cnn(phi2, phi2.output_dim()).cnn;
    const auto s = symmetrize(SampleSet::random(z3, 1, 16, static_cast<std::uint64_t>(trial)));
    for (const double p : {1.0, 0.5, kInfinity})
      EXPECT_LE(transfer_norm_identity_check(as_evaluable(a), as_evaluable(b), s, p).relative_gap, 1e-9);
  }
}

TEST(NormIdentity, ZeroIdentityDistanceMeansEqual) {
  const auto z3 = make_cyclic(3);
  const auto f = as_evaluable(offset_cnn(z3, 1.0));
  const auto r = transfer_norm_identity_check(f, f, symmetrize(SampleSet::random(z3, 1, 4, 2)), 2.0);
  EXPECT_EQ(r.identity_distance, 0.0);
  EXPECT_EQ(r.lhs, 0.0);
}

TEST(NormIdentity, Preconditions) {
  const auto z3 = make_cyclic(3);
  const auto f = as_evaluable(offset_cnn(z3, 0.0));
  EXPECT_THROW(transfer_norm_identity_check(f, f, SampleSet::random(z3, 1, 4, 2), 2.0), PreconditionError);
  const AffineMap m(3, 3, {{0, 0, 1.0}, {1, 1, 2.0}, {2, 2, 3.0}}, {0.0, 0.0, 0.0});
  EXPECT_THROW(transfer_norm_identity_check(f, as_evaluable(m, z3, 1, 1), symmetrize(SampleSet::random(z3, 1, 4, 2)), 2.0),
               PreconditionError);
}

TEST(Audit, Examples) {
  const auto z2 = make_cyclic(2);
  const FNN zero(z2, 1, {AffineMap::zero(2, 2)}, Activation::relu());
  EXPECT_TRUE(audit_weight_domain(zero, WeightDomain::finite({0.0})).passed);

  const FNN half(z2, 1, {AffineMap(1, 2, {{0, 0, 0.5}, {0, 1, 2.0}}, {0.0})}, Activation::relu());
  const auto a = audit_weight_domain(half, WeightDomain::integers());
  EXPECT_FALSE(a.passed);
  EXPECT_EQ(a.offending, std::vector<double>{0.5});

  // Unstored coefficients are zeros and are audited like any other weight.
  const FNN dense(z2, 1, {AffineMap(1, 2, {{0, 0, 1.0}, {0, 1, 2.0}}, {1.0})}, Activation::relu());
  EXPECT_TRUE(audit_weight_domain(dense, WeightDomain::finite({1.0, 2.0})).passed);
  EXPECT_FALSE(audit_weight_domain(half, WeightDomain::finite({0.5, 2.0})).passed);
}

TEST(Audit, SignWeightsSurviveTranspilation) {
  SplitMix64 rng(7);
  const auto sign = [](SplitMix64& r) { return r.uniform() < 0.5 ? -1.0 : 1.0; };
  for (int trial = 0; trial < 10; ++trial) {
    const auto phi = testing::random_fnn(rng, make_cyclic(4), 2, 3, 5, Activation::relu(), 0.5, sign);
    const auto out = fnn_to_cnn(phi, phi.output_dim());
    if (out.report.special_case == SpecialCase::constant_network) continue;
    EXPECT_TRUE(audit_weight_domain(out.cnn, WeightDomain::finite({-1.0, 1.0}).with_zero_one()).passed);
  }
}

TEST(Numeric, RelativeDeviation) {
  const std::vector<double> z{0.0, 0.0}, a{1.0, 2.0}, b{1.0, 3.0};
  EXPECT_EQ(relative_deviation(z, z), 0.0);
  EXPECT_DOUBLE_EQ(relative_deviation(a, b), 1.0 / 3.0);
  EXPECT_TRUE(std::isnan(relative_deviation(a, std::vector<double>{1.0, std::nan("")})));
  EXPECT_EQ(relative_gap(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(relative_gap(2.0, 1.0), 0.5);
}

}  // namespace
}  // namespace gconv
