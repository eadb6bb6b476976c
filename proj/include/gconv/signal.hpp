#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gconv/group.hpp"

namespace gconv {

/// An element of R^{[C] x G}, stored channel-major: index = i * |G| + g for
/// channel i (0-based) and element g. This layout doubles as the flat FNN view.
class ChannelSignal {
 public:
  ChannelSignal(GroupPtr group, std::size_t channels, std::vector<double> values);
  static ChannelSignal zeros(GroupPtr group, std::size_t channels);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t channels() const noexcept { return channels_; }
  std::size_t group_size() const noexcept { return group_->size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> mutable_values() noexcept { return values_; }
  double at(std::size_t channel, Element g) const { return values_[channel * group_size() + g]; }

  /// Channel i, 1-based as in the mathematical notation.
  GroupSignal get_channel(std::size_t i) const;
  void set_channel(std::size_t i, const GroupSignal& s);

  bool operator==(const ChannelSignal& other) const {
    return same_group(group_, other.group_) && channels_ == other.channels_ &&
           values_ == other.values_;
  }

 private:
  GroupPtr group_;
  std::size_t channels_;
  std::vector<double> values_;
};

/// (x_{i,g})_i for a fixed element g.
std::vector<double> project(const ChannelSignal& x, Element g);

/// shift(g, .) applied to every channel.
ChannelSignal shift_vectorized(Element g, const ChannelSignal& x);

/// Same as shift_vectorized on a raw channel-major buffer.
std::vector<double> shift_flat(const FiniteGroup& group, Element g, std::span<const double> x);

}  // namespace gconv
