#pragma once

#include <cstddef>
#include <vector>

#include "gconv/activation.hpp"
#include "gconv/affine.hpp"
#include "gconv/fnn.hpp"
#include "gconv/signal.hpp"

namespace gconv {

/// B(x) = (x_i * a_r)_{(r, i)}, with output channel (r, i) at index r * C + i.
class FilteringMap {
 public:
  FilteringMap(GroupPtr group, std::size_t in_channels, std::vector<GroupSignal> filters);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t in_channels() const noexcept { return in_channels_; }
  std::size_t filter_count() const noexcept { return filter_count_; }
  std::size_t out_channels() const noexcept { return filter_count_ * in_channels_; }
  GroupSignal filter(std::size_t r) const;
  /// All filters back to back, filter r at [r |G|, (r+1) |G|).
  std::span<const double> flat_filters() const noexcept { return filters_; }

  bool operator==(const FilteringMap& other) const {
    return same_group(group_, other.group_) && in_channels_ == other.in_channels_ &&
           filters_ == other.filters_;
  }

 private:
  GroupPtr group_;
  std::size_t in_channels_;
  std::size_t filter_count_;
  std::vector<double> filters_;
};

ChannelSignal apply_filtering(const FilteringMap& b, const ChannelSignal& x);

/// Sum over filters of their nonzero taps.
std::size_t filter_l0(const FilteringMap& b);

/// Spatially-convolutional, semi-connected map T = lift(A) o B. The affine part
/// reads column (r, i) at r * C_1 + i and has C_2 rows.
class ConvLayer {
 public:
  ConvLayer(FilteringMap filtering, AffineMap affine);

  const FilteringMap& filtering() const noexcept { return filtering_; }
  const AffineMap& affine() const noexcept { return affine_; }
  const GroupPtr& group() const noexcept { return filtering_.group(); }
  std::size_t in_channels() const noexcept { return filtering_.in_channels(); }
  std::size_t out_channels() const noexcept { return affine_.rows(); }
  std::size_t filter_count() const noexcept { return filtering_.filter_count(); }

  ChannelSignal operator()(const ChannelSignal& x) const;
  /// Flat channel-major in, flat channel-major out.
  std::vector<double> apply_flat(std::span<const double> x) const;

  bool operator==(const ConvLayer&) const = default;

 private:
  FilteringMap filtering_;
  AffineMap affine_;
};

/// Cost of the stored factorization, ||A||_0 + ||B||_filter. This bounds the
/// minimum over all factorizations from above.
std::size_t conv_layer_l0(const ConvLayer& t);

/// The layer as one affine map R^{C_1 |G|} -> R^{C_2 |G|}, channel-major on both sides.
AffineMap lower_conv_layer(const ConvLayer& t);

class CNN {
 public:
  /// Throws InvalidStructure if L = 0, groups differ, or channel counts do not chain.
  CNN(GroupPtr group, std::vector<ConvLayer> layers, Activation activation);

  const GroupPtr& group() const noexcept { return group_; }
  const std::vector<ConvLayer>& layers() const noexcept { return layers_; }
  const ConvLayer& layer(std::size_t l) const { return layers_.at(l); }
  std::size_t depth() const noexcept { return layers_.size(); }
  const Activation& activation() const noexcept { return activation_; }
  std::size_t input_channels() const noexcept { return layers_.front().in_channels(); }
  std::size_t output_channels() const noexcept { return layers_.back().out_channels(); }

  /// (C_0, ..., C_L).
  std::vector<std::size_t> channel_counts() const;
  /// (k_1, ..., k_L).
  std::vector<std::size_t> filter_counts() const;
  /// C(net) = sum of the channel counts.
  std::size_t channel_total() const;

  std::vector<double> realize(std::span<const double> x) const;

  bool operator==(const CNN& other) const {
    return same_group(group_, other.group_) && layers_ == other.layers_ &&
           activation_ == other.activation_;
  }

 private:
  GroupPtr group_;
  std::vector<ConvLayer> layers_;
  Activation activation_;
};

ChannelSignal realize_cnn(const CNN& net, const ChannelSignal& x);

/// W_conv(net) = sum of conv_layer_l0 over the layers.
std::size_t w_conv(const CNN& net);

/// The same network read as an FNN on the channel-major flattening.
FNN cnn_as_fnn(const CNN& net);

}  // namespace gconv
