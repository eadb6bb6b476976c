#pragma once

// Random generators and brute-force oracles shared by the unit and acceptance
// tests. The oracles work on dense matrices and explicit index formulas and do
// not call the library's kernels.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "gconv/cnn.hpp"
#include "gconv/fnn.hpp"
#include "gconv/random.hpp"

namespace gconv::testing {

inline std::vector<GroupPtr> small_groups() {
  return {make_cyclic(2), make_cyclic(3), make_cyclic(4), make_cyclic(5), make_cyclic(6),
          make_product(make_cyclic(2), make_cyclic(2))};
}

/// A nonabelian group: S_3 as permutations of {0, 1, 2}, identity first.
inline GroupPtr symmetric3() {
  const std::vector<std::vector<int>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  CayleyTable t;
  t.size = 6;
  for (const auto& p : perms)
    for (const auto& q : perms) {
      // (p . q)(x) = p(q(x))
      std::vector<int> r{p[q[0]], p[q[1]], p[q[2]]};
      for (std::size_t k = 0; k < perms.size(); ++k)
        if (perms[k] == r) t.entries.push_back(static_cast<std::int64_t>(k));
    }
  return make_from_table(t);
}

using WeightSampler = std::function<double(SplitMix64&)>;

inline double normal_weight(SplitMix64& rng) { return rng.normal(); }

/// Random sparse affine map; each coefficient is nonzero with probability `density`.
inline AffineMap random_affine(SplitMix64& rng, std::size_t rows, std::size_t cols, double density,
                               const WeightSampler& weight = normal_weight, bool force_nonzero = true) {
  std::vector<AffineMap::Entry> entries;
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t c = 0; c < cols; ++c)
      if (rng.uniform() < density) {
        const double w = weight(rng);
        if (w != 0.0) entries.push_back({j, c, w});
      }
  std::vector<double> bias(rows, 0.0);
  for (double& b : bias)
    if (rng.uniform() < density) b = weight(rng);
  if (force_nonzero && entries.empty()) {
    const double w = weight(rng);
    entries.push_back({rng.below(rows), rng.below(cols), w == 0.0 ? 1.0 : w});
  }
  return AffineMap(rows, cols, std::move(entries), std::move(bias));
}

inline FNN random_fnn(SplitMix64& rng, const GroupPtr& group, std::size_t c0, std::size_t depth,
                      std::size_t max_width, Activation act = Activation::relu(), double density = 0.4,
                      const WeightSampler& weight = normal_weight) {
  std::vector<AffineMap> layers;
  std::size_t cols = c0 * group->size();
  for (std::size_t l = 0; l < depth; ++l) {
    const std::size_t rows = 1 + rng.below(max_width);
    layers.push_back(random_affine(rng, rows, cols, density, weight));
    cols = rows;
  }
  return FNN(group, c0, std::move(layers), act);
}

inline CNN random_cnn(SplitMix64& rng, const GroupPtr& group, std::size_t c0, std::size_t depth,
                      std::size_t max_channels, std::size_t max_filters, Activation act = Activation::relu(),
                      double density = 0.5) {
  std::vector<ConvLayer> layers;
  std::size_t c_in = c0;
  const std::size_t n = group->size();
  for (std::size_t l = 0; l < depth; ++l) {
    const std::size_t k = 1 + rng.below(max_filters);
    const std::size_t c_out = 1 + rng.below(max_channels);
    std::vector<GroupSignal> filters;
    for (std::size_t r = 0; r < k; ++r) {
      std::vector<double> v(n, 0.0);
      for (double& x : v)
        if (rng.uniform() < density) x = rng.normal();
      filters.emplace_back(group, std::move(v));
    }
    layers.emplace_back(FilteringMap(group, c_in, std::move(filters)),
                        random_affine(rng, c_out, k * c_in, density));
    c_in = c_out;
  }
  return CNN(group, std::move(layers), act);
}

// ---------------------------------------------------------------- oracles

/// (a * b)(g) = sum_h a(h) b(h^{-1} g), evaluated straight from the table.
inline std::vector<double> oracle_convolve(const FiniteGroup& g, const std::vector<double>& a,
                                           const std::vector<double>& b) {
  const std::size_t n = g.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t e = 0; e < n; ++e)
    for (std::size_t h = 0; h < n; ++h) {
      // find h^{-1} by search rather than the stored inverse
      std::size_t hinv = 0;
      while (g.mul(static_cast<Element>(h), static_cast<Element>(hinv)) != 0) ++hinv;
      out[e] += a[h] * b[g.mul(static_cast<Element>(hinv), static_cast<Element>(e))];
    }
  return out;
}

/// Dense row-major matrix of a conv layer, built from the definition
/// T = lift(A) o B applied to every basis vector.
inline std::vector<double> oracle_layer_matrix(const ConvLayer& t) {
  const auto& grp = *t.group();
  const std::size_t n = grp.size(), c1 = t.in_channels(), c2 = t.out_channels(), k = t.filter_count();
  const auto a_dense = t.affine().to_dense();  // c2 x (k c1)
  const auto flat = t.filtering().flat_filters();
  std::vector<double> m(c2 * n * c1 * n, 0.0);
  for (std::size_t i0 = 0; i0 < c1; ++i0)
    for (std::size_t h0 = 0; h0 < n; ++h0) {
      // filtered[(r, i)][g] for the basis input delta_{i0, h0}
      std::vector<double> delta(n, 0.0);
      delta[h0] = 1.0;
      for (std::size_t j = 0; j < c2; ++j)
        for (std::size_t g = 0; g < n; ++g) {
          double acc = 0.0;
          for (std::size_t r = 0; r < k; ++r) {
            std::vector<double> ar(flat.begin() + static_cast<std::ptrdiff_t>(r * n),
                                   flat.begin() + static_cast<std::ptrdiff_t>((r + 1) * n));
            acc += a_dense[j * (k * c1) + r * c1 + i0] * oracle_convolve(grp, delta, ar)[g];
          }
          m[(j * n + g) * (c1 * n) + i0 * n + h0] = acc;
        }
    }
  return m;
}

inline std::vector<double> dense_apply(const std::vector<double>& m, std::size_t rows, std::size_t cols,
                                       const std::vector<double>& x) {
  std::vector<double> y(rows, 0.0);
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t c = 0; c < cols; ++c) y[j] += m[j * cols + c] * x[c];
  return y;
}

/// Forward pass of a CNN through dense per-layer matrices.
inline std::vector<double> oracle_realize_cnn(const CNN& net, std::vector<double> x) {
  const std::size_t n = net.group()->size();
  for (std::size_t l = 0; l < net.depth(); ++l) {
    const auto& t = net.layer(l);
    const auto m = oracle_layer_matrix(t);
    auto y = dense_apply(m, t.out_channels() * n, t.in_channels() * n, x);
    for (std::size_t j = 0; j < t.out_channels(); ++j)
      for (std::size_t g = 0; g < n; ++g) y[j * n + g] += t.affine().bias()[j];
    if (l + 1 < net.depth())
      for (double& v : y) v = net.activation()(v);
    x = std::move(y);
  }
  return x;
}

/// Forward pass of an FNN through dense matrices.
inline std::vector<double> oracle_realize_fnn(const FNN& net, std::vector<double> x) {
  for (std::size_t l = 0; l < net.depth(); ++l) {
    const auto& v = net.layer(l);
    auto y = dense_apply(v.to_dense(), v.rows(), v.cols(), x);
    for (std::size_t j = 0; j < v.rows(); ++j) y[j] += v.bias()[j];
    if (l + 1 < net.depth())
      for (double& e : y) e = net.activation()(e);
    x = std::move(y);
  }
  return x;
}

inline double max_rel(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
    s = std::max({s, std::abs(a[i]), std::abs(b[i])});
  }
  return s == 0.0 ? 0.0 : d / s;
}

}  // namespace gconv::testing
