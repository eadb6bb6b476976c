#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gconv/activation.hpp"
#include "gconv/affine.hpp"
#include "gconv/signal.hpp"

namespace gconv {

/// Fully-connected network (V_1, ..., V_L) on inputs in R^{[C_0] x G}.
class FNN {
 public:
  /// Throws InvalidStructure if L = 0 or consecutive layer shapes disagree.
  FNN(GroupPtr group, std::size_t input_channels, std::vector<AffineMap> layers,
      Activation activation);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t input_channels() const noexcept { return input_channels_; }
  std::size_t input_dim() const noexcept { return input_channels_ * group_->size(); }
  std::size_t output_dim() const noexcept { return layers_.back().rows(); }
  std::size_t depth() const noexcept { return layers_.size(); }
  const std::vector<AffineMap>& layers() const noexcept { return layers_; }
  const AffineMap& layer(std::size_t l) const { return layers_.at(l); }
  const Activation& activation() const noexcept { return activation_; }

  /// (C_0 |G|, N_1, ..., N_L).
  std::vector<std::size_t> architecture() const;

  /// Realisation on a flat channel-major input of length C_0 |G|.
  std::vector<double> realize(std::span<const double> x) const;

  bool operator==(const FNN& other) const {
    return same_group(group_, other.group_) && input_channels_ == other.input_channels_ &&
           layers_ == other.layers_ && activation_ == other.activation_;
  }

 private:
  GroupPtr group_;
  std::size_t input_channels_;
  std::vector<AffineMap> layers_;
  Activation activation_;
};

/// x_{l+1} = act(V_{l+1} x_l) for l <= L-2, output V_L x_{L-1}.
std::vector<double> realize_fnn(const FNN& net, const ChannelSignal& x);

/// W(net) = sum of per-layer l0 norms.
std::size_t weight_count(const FNN& net);

/// N(net) = C_0 |G| + sum N_l.
std::size_t neuron_count(const FNN& net);

}  // namespace gconv
