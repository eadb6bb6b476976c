#include "gconv/transpiler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "gconv/error.hpp"
#include "gconv/numeric.hpp"
#include "gconv/random.hpp"

namespace gconv {

std::string to_string(Direction d) {
  return d == Direction::fnn_to_cnn ? "fnn_to_cnn" : "cnn_to_fnn";
}

std::string to_string(SpecialCase c) {
  switch (c) {
    case SpecialCase::none: return "none";
    case SpecialCase::zero_last_layer: return "zero_last_layer";
    case SpecialCase::constant_network: return "constant_network";
  }
  return "none";
}

namespace {

std::vector<ChannelSignal> check_inputs(const GroupPtr& group, std::size_t channels,
                                        const CheckOptions& options) {
  if (!options.inputs.empty()) {
    for (const auto& x : options.inputs)
      if (!same_group(x.group(), group) || x.channels() != channels)
        throw IncompatibleOperands("check input does not match the network input shape");
    return options.inputs;
  }
  return SampleSet::random(group, channels, options.samples, options.seed).points;
}

// Max relative deviation between two maps over the inputs; `reference` and
// `candidate` return vectors of equal length.
template <class Ref, class Cand>
EqualityCheck compare_on(const std::vector<ChannelSignal>& inputs, const CheckOptions& options,
                         Ref&& reference, Cand&& candidate) {
  std::vector<double> dev(inputs.size(), 0.0);
  const auto count = static_cast<std::ptrdiff_t>(inputs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t s = 0; s < count; ++s) {
    const auto x = inputs[static_cast<std::size_t>(s)].values();
    dev[static_cast<std::size_t>(s)] = relative_deviation(reference(x), candidate(x));
  }
  EqualityCheck check;
  check.samples = inputs.size();
  check.seed = options.seed;
  check.tolerance = options.tolerance;
  bool nan = false;
  for (const double d : dev) {
    if (std::isnan(d)) nan = true;
    check.max_relative_deviation = std::max(check.max_relative_deviation, d);
  }
  check.passed = !nan && check.max_relative_deviation <= options.tolerance;
  if (nan) check.max_relative_deviation = std::nan("");
  return check;
}

std::vector<double> identity_slice(const std::vector<double>& y, std::size_t group_size) {
  std::vector<double> out(y.size() / group_size);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = y[j * group_size];
  return out;
}

FilteringMap zero_filtering(const GroupPtr& group, std::size_t in_channels, std::size_t k) {
  return FilteringMap(group, in_channels, std::vector<GroupSignal>(k, GroupSignal::zeros(group)));
}

}  // namespace

FnnToCnn fnn_to_cnn(const FNN& phi, std::size_t n_out, const CheckOptions& options) {
  if (n_out != phi.output_dim())
    throw InvalidStructure("requested " + std::to_string(n_out) + " outputs but the FNN has " +
                           std::to_string(phi.output_dim()));
  const GroupPtr& group = phi.group();
  const std::size_t n = group->size();
  const std::size_t c0 = phi.input_channels();
  const std::size_t depth = phi.depth();
  const auto arch = phi.architecture();
  // widths[l] = N_l with N_0 = C_0.
  std::vector<std::size_t> widths{c0};
  for (std::size_t l = 1; l <= depth; ++l) widths.push_back(arch[l]);
  std::vector<std::size_t> k(depth + 1, 1);
  k[1] = widths[1] * c0;

  SpecialCase special = SpecialCase::none;
  if (phi.layers().back().l0_norm() == 0) {
    special = SpecialCase::zero_last_layer;
  } else {
    for (std::size_t l = 0; l + 1 < depth; ++l)
      if (phi.layer(l).l0_norm() == 0) special = SpecialCase::constant_network;
  }

  std::vector<ConvLayer> layers;
  layers.reserve(depth);
  if (special != SpecialCase::none) {
    for (std::size_t l = 1; l <= depth; ++l) {
      AffineMap a = AffineMap::zero(widths[l], k[l] * widths[l - 1]);
      if (l == depth && special == SpecialCase::constant_network) {
        // Any input works: a zero layer erases the dependence on x.
        const auto c = phi.realize(std::vector<double>(phi.input_dim(), 0.0));
        a = AffineMap::constant(k[l] * widths[l - 1], c);
      }
      layers.emplace_back(zero_filtering(group, widths[l - 1], k[l]), std::move(a));
    }
  } else {
    // Layer 1: filter (j, iota) -> involute(v_j^iota), index j * C_0 + iota.
    const AffineMap& v1 = phi.layer(0);
    const std::size_t n1 = widths[1];
    const auto dense = v1.to_dense();
    std::vector<GroupSignal> filters;
    filters.reserve(n1 * c0);
    std::vector<AffineMap::Entry> entries;
    for (std::size_t j = 0; j < n1; ++j) {
      for (std::size_t iota = 0; iota < c0; ++iota) {
        const auto first = dense.begin() + static_cast<std::ptrdiff_t>(j * c0 * n + iota * n);
        GroupSignal block(group, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(n)));
        if (l0_count(block.values()) > 0) {
          // Selects y_{j, i, i}: filter r = j * C_0 + i applied to channel i.
          const std::size_t r = j * c0 + iota;
          entries.push_back({j, r * c0 + iota, 1.0});
        }
        filters.push_back(involute(block));
      }
    }
    const auto bias = v1.bias();
    layers.emplace_back(FilteringMap(group, c0, std::move(filters)),
                        AffineMap(n1, k[1] * c0, std::move(entries), std::vector<double>(bias.begin(), bias.end())));
    for (std::size_t l = 2; l <= depth; ++l)
      layers.emplace_back(FilteringMap(group, widths[l - 1], {GroupSignal::delta(group)}), phi.layer(l - 1));
  }

  CNN psi(group, std::move(layers), phi.activation());

  TransferReport report;
  report.direction = Direction::fnn_to_cnn;
  report.source_weights = weight_count(phi);
  report.target_weights = w_conv(psi);
  report.bound_factor = 2;
  report.bound_satisfied = report.target_weights <= 2 * report.source_weights;
  report.channel_counts = psi.channel_counts();
  report.filter_counts = psi.filter_counts();
  report.special_case = special;
  const auto inputs = check_inputs(group, c0, options);
  report.equality_check = compare_on(
      inputs, options, [&](std::span<const double> x) { return phi.realize(x); },
      [&](std::span<const double> x) { return identity_slice(psi.realize(x), n); });
  return {std::move(psi), std::move(report)};
}

CnnToFnn cnn_to_fnn(const CNN& psi, const CheckOptions& options) {
  const GroupPtr& group = psi.group();
  const std::size_t n = group->size();
  std::vector<AffineMap> layers;
  layers.reserve(psi.depth());
  for (const auto& t : psi.layers()) layers.push_back(lower_conv_layer(t));

  // Keep only the rows (j, identity) of the last layer.
  const AffineMap& last = layers.back();
  const std::size_t c_out = psi.output_channels();
  std::vector<AffineMap::Entry> entries;
  for (const auto& e : last.entries())
    if (e.row % n == 0) entries.push_back({e.row / n, e.col, e.value});
  std::vector<double> bias(c_out);
  for (std::size_t j = 0; j < c_out; ++j) bias[j] = last.bias()[j * n];
  layers.back() = AffineMap(c_out, last.cols(), std::move(entries), std::move(bias));

  FNN phi(group, psi.input_channels(), std::move(layers), psi.activation());

  TransferReport report;
  report.direction = Direction::cnn_to_fnn;
  report.source_weights = w_conv(psi);
  report.target_weights = weight_count(phi);
  report.bound_factor = n * n;
  report.bound_satisfied = report.target_weights <= report.bound_factor * report.source_weights;
  report.channel_counts = psi.channel_counts();
  report.filter_counts = psi.filter_counts();
  report.architecture = phi.architecture();
  const auto inputs = check_inputs(group, psi.input_channels(), options);
  report.equality_check = compare_on(
      inputs, options, [&](std::span<const double> x) { return identity_slice(psi.realize(x), n); },
      [&](std::span<const double> x) { return phi.realize(x); });
  return {std::move(phi), std::move(report)};
}

RoundtripReport roundtrip_check(const FNN& phi, std::size_t n_out, const CheckOptions& options) {
  auto forward = fnn_to_cnn(phi, n_out, options);
  auto backward = cnn_to_fnn(forward.cnn, options);
  const std::size_t n = phi.group()->size();

  RoundtripReport r;
  r.source_weights = weight_count(phi);
  r.final_weights = weight_count(backward.fnn);
  r.chained_factor = 2 * n * n;
  r.chained_bound_satisfied = r.final_weights <= r.chained_factor * r.source_weights;
  const auto inputs = check_inputs(phi.group(), phi.input_channels(), options);
  const FNN& back = backward.fnn;
  r.equality_check = compare_on(
      inputs, options, [&](std::span<const double> x) { return phi.realize(x); },
      [&](std::span<const double> x) { return back.realize(x); });
  r.forward = std::move(forward.report);
  r.backward = std::move(backward.report);
  return r;
}

std::vector<double> interpolation_grid(std::size_t resolution) {
  if (resolution < 2) throw InvalidParameter("interpolation grid needs resolution >= 2");
  std::vector<double> t(resolution);
  for (std::size_t k = 0; k < resolution; ++k)
    t[k] = -0.5 + static_cast<double>(k) / static_cast<double>(resolution - 1);
  return t;
}

Interpolation build_interpolation_fnn(GroupPtr group, std::size_t input_channels,
                                      std::span<const double> grid_values, std::size_t profile_coordinate) {
  const std::size_t resolution = grid_values.size();
  const auto t = interpolation_grid(resolution);
  for (const double v : grid_values)
    if (!std::isfinite(v)) throw InvalidParameter("interpolation target has non-finite grid values");
  const std::size_t dim = input_channels * group->size();
  if (profile_coordinate >= dim) throw InvalidParameter("profile coordinate outside the input");

  std::vector<double> slope(resolution - 1);
  for (std::size_t k = 0; k + 1 < resolution; ++k)
    slope[k] = (grid_values[k + 1] - grid_values[k]) / (t[k + 1] - t[k]);
  const double s0 = slope[0];
  const double out_bias = grid_values[0] - s0 * t[0];

  // f(t) = f_0 + s_0 (t - t_0) + sum_k (s_k - s_{k-1}) relu(t - t_k), with the
  // linear part written as s_0 relu(t) - s_0 relu(-t). Units sharing a
  // pre-activation (weight, bias) are merged.
  std::map<std::pair<double, double>, double> units;
  bool kinked = false;
  for (std::size_t k = 1; k + 1 < resolution; ++k) {
    const double d = slope[k] - slope[k - 1];
    if (d == 0.0) continue;
    kinked = true;
    units[{1.0, t[k] == 0.0 ? 0.0 : -t[k]}] += d;
  }

  std::vector<AffineMap> layers;
  if (!kinked) {
    std::vector<AffineMap::Entry> e;
    if (s0 != 0.0) e.push_back({0, profile_coordinate, s0});
    layers.emplace_back(1, dim, std::move(e), std::vector<double>{out_bias});
  } else {
    if (s0 != 0.0) {
      units[{1.0, 0.0}] += s0;
      units[{-1.0, 0.0}] -= s0;
    }
    std::vector<AffineMap::Entry> hidden, output;
    std::vector<double> hidden_bias;
    std::size_t u = 0;
    for (const auto& [key, coef] : units) {
      if (coef == 0.0) continue;
      hidden.push_back({u, profile_coordinate, key.first});
      hidden_bias.push_back(key.second);
      output.push_back({0, u, coef});
      ++u;
    }
    layers.emplace_back(u, dim, std::move(hidden), std::move(hidden_bias));
    layers.emplace_back(1, u, std::move(output), std::vector<double>{out_bias});
  }

  FNN net(group, input_channels, std::move(layers), Activation::relu());
  double err = 0.0;
  std::vector<double> x(dim, 0.0);
  for (std::size_t k = 0; k < resolution; ++k) {
    x[profile_coordinate] = t[k];
    err = std::max(err, std::abs(net.realize(x)[0] - grid_values[k]));
  }
  return {std::move(net), err};
}

}  // namespace gconv
