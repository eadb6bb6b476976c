#include "gconv/cnn.hpp"

#include <map>
#include <string>
#include <utility>

#include "gconv/error.hpp"
#include "gconv/kernels.hpp"

namespace gconv {

FilteringMap::FilteringMap(GroupPtr group, std::size_t in_channels, std::vector<GroupSignal> filters)
    : group_(std::move(group)), in_channels_(in_channels), filter_count_(filters.size()) {
  if (!group_) throw InvalidStructure("filtering map needs a group");
  if (in_channels_ == 0) throw InvalidStructure("filtering map needs at least one input channel");
  if (filters.empty()) throw InvalidStructure("filtering map needs k >= 1 filters");
  filters_.reserve(filter_count_ * group_->size());
  for (const auto& a : filters) {
    if (!same_group(a.group(), group_)) throw InvalidStructure("filter lives on a different group");
    filters_.insert(filters_.end(), a.values().begin(), a.values().end());
  }
}

GroupSignal FilteringMap::filter(std::size_t r) const {
  if (r >= filter_count_) throw InvalidParameter("filter index out of range");
  const std::size_t n = group_->size();
  const auto first = filters_.begin() + static_cast<std::ptrdiff_t>(r * n);
  return GroupSignal(group_, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(n)));
}

ChannelSignal apply_filtering(const FilteringMap& b, const ChannelSignal& x) {
  if (!same_group(b.group(), x.group())) throw IncompatibleOperands("filtering input on a different group");
  if (x.channels() != b.in_channels())
    throw IncompatibleOperands("filtering expects " + std::to_string(b.in_channels()) + " channels, got " +
                               std::to_string(x.channels()));
  std::vector<double> out(b.out_channels() * x.group_size());
  kernels::filter(kernels::GroupView(*b.group()), b.in_channels(), x.values(), b.flat_filters(), out);
  return ChannelSignal(b.group(), b.out_channels(), std::move(out));
}

std::size_t filter_l0(const FilteringMap& b) { return l0_count(b.flat_filters()); }

ConvLayer::ConvLayer(FilteringMap filtering, AffineMap affine)
    : filtering_(std::move(filtering)), affine_(std::move(affine)) {
  if (affine_.cols() != filtering_.out_channels())
    throw InvalidStructure("affine part has " + std::to_string(affine_.cols()) + " cols but k*C_1 = " +
                           std::to_string(filtering_.out_channels()));
}

std::vector<double> ConvLayer::apply_flat(std::span<const double> x) const {
  const std::size_t n = group()->size();
  if (x.size() != in_channels() * n)
    throw IncompatibleOperands("conv layer input has length " + std::to_string(x.size()) + ", expected " +
                               std::to_string(in_channels() * n));
  std::vector<double> filtered(filtering_.out_channels() * n);
  kernels::filter(kernels::GroupView(*group()), in_channels(), x, filtering_.flat_filters(), filtered);
  std::vector<double> out(out_channels() * n);
  kernels::lifted_affine(affine_.csr(), n, filtered, out);
  return out;
}

ChannelSignal ConvLayer::operator()(const ChannelSignal& x) const {
  if (!same_group(group(), x.group())) throw IncompatibleOperands("conv layer input on a different group");
  return ChannelSignal(group(), out_channels(), apply_flat(x.values()));
}

std::size_t conv_layer_l0(const ConvLayer& t) { return t.affine().l0_norm() + filter_l0(t.filtering()); }

AffineMap lower_conv_layer(const ConvLayer& t) {
  const auto& grp = *t.group();
  const std::size_t n = grp.size();
  const std::size_t c1 = t.in_channels();
  const std::size_t c2 = t.out_channels();
  const auto filters = t.filtering().flat_filters();
  const auto a = t.affine().csr();

  // Entry ((j, g), (i0, h0)) = sum_r A[j, (r, i0)] * a_r(h0^{-1} g), r ascending.
  std::vector<AffineMap::Entry> entries;
  std::map<std::size_t, double> row;  // input column -> value
  for (std::size_t j = 0; j < c2; ++j) {
    for (std::size_t g = 0; g < n; ++g) {
      row.clear();
      for (std::size_t p = a.row_ptr[j]; p < a.row_ptr[j + 1]; ++p) {
        const std::size_t r = a.col[p] / c1;
        const std::size_t i0 = a.col[p] % c1;
        for (std::size_t h0 = 0; h0 < n; ++h0) {
          const double tap = filters[r * n + grp.mul(grp.inverse(static_cast<Element>(h0)), static_cast<Element>(g))];
          if (tap != 0.0) row[i0 * n + h0] += a.val[p] * tap;
        }
      }
      for (const auto& [col, v] : row)
        if (v != 0.0) entries.push_back({j * n + g, col, v});
    }
  }
  std::vector<double> bias(c2 * n);
  for (std::size_t j = 0; j < c2; ++j)
    for (std::size_t g = 0; g < n; ++g) bias[j * n + g] = a.bias[j];
  return AffineMap(c2 * n, c1 * n, std::move(entries), std::move(bias));
}

CNN::CNN(GroupPtr group, std::vector<ConvLayer> layers, Activation activation)
    : group_(std::move(group)), layers_(std::move(layers)), activation_(activation) {
  if (!group_) throw InvalidStructure("CNN needs a group");
  if (layers_.empty()) throw InvalidStructure("CNN needs at least one layer");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    if (!same_group(layers_[l].group(), group_))
      throw InvalidStructure("layer " + std::to_string(l + 1) + " lives on a different group");
    if (l > 0 && layers_[l].in_channels() != layers_[l - 1].out_channels())
      throw InvalidStructure("layer " + std::to_string(l + 1) + " expects " +
                             std::to_string(layers_[l].in_channels()) + " channels but layer " +
                             std::to_string(l) + " produces " + std::to_string(layers_[l - 1].out_channels()));
  }
}

std::vector<std::size_t> CNN::channel_counts() const {
  std::vector<std::size_t> c{input_channels()};
  for (const auto& t : layers_) c.push_back(t.out_channels());
  return c;
}

std::vector<std::size_t> CNN::filter_counts() const {
  std::vector<std::size_t> k;
  for (const auto& t : layers_) k.push_back(t.filter_count());
  return k;
}

std::size_t CNN::channel_total() const {
  std::size_t total = 0;
  for (const auto c : channel_counts()) total += c;
  return total;
}

std::vector<double> CNN::realize(std::span<const double> x) const {
  std::vector<double> cur(x.begin(), x.end());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    auto next = layers_[l].apply_flat(cur);
    if (l + 1 < layers_.size()) activation_.apply(next);
    cur = std::move(next);
  }
  return cur;
}

ChannelSignal realize_cnn(const CNN& net, const ChannelSignal& x) {
  if (!same_group(net.group(), x.group())) throw IncompatibleOperands("CNN input on a different group");
  if (x.channels() != net.input_channels())
    throw IncompatibleOperands("CNN expects " + std::to_string(net.input_channels()) + " channels, got " +
                               std::to_string(x.channels()));
  return ChannelSignal(net.group(), net.output_channels(), net.realize(x.values()));
}

std::size_t w_conv(const CNN& net) {
  std::size_t w = 0;
  for (const auto& t : net.layers()) w += conv_layer_l0(t);
  return w;
}

FNN cnn_as_fnn(const CNN& net) {
  std::vector<AffineMap> layers;
  layers.reserve(net.depth());
  for (const auto& t : net.layers()) layers.push_back(lower_conv_layer(t));
  return FNN(net.group(), net.input_channels(), std::move(layers), net.activation());
}

}  // namespace gconv
