#include "gconv/signal.hpp"

#include <string>
#include <utility>

#include "gconv/error.hpp"

namespace gconv {

ChannelSignal::ChannelSignal(GroupPtr group, std::size_t channels, std::vector<double> values)
    : group_(std::move(group)), channels_(channels), values_(std::move(values)) {
  if (!group_) throw InvalidParameter("signal needs a group");
  if (channels_ == 0) throw InvalidParameter("signal needs at least one channel");
  if (values_.size() != channels_ * group_->size())
    throw IncompatibleOperands("signal has " + std::to_string(values_.size()) + " values, expected C*|G| = " +
                               std::to_string(channels_ * group_->size()));
}

ChannelSignal ChannelSignal::zeros(GroupPtr group, std::size_t channels) {
  const std::size_t n = channels * group->size();
  return ChannelSignal(std::move(group), channels, std::vector<double>(n, 0.0));
}

GroupSignal ChannelSignal::get_channel(std::size_t i) const {
  if (i < 1 || i > channels_)
    throw InvalidParameter("channel " + std::to_string(i) + " outside [1, " + std::to_string(channels_) + "]");
  const std::size_t n = group_size();
  const auto first = values_.begin() + static_cast<std::ptrdiff_t>((i - 1) * n);
  return GroupSignal(group_, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(n)));
}

void ChannelSignal::set_channel(std::size_t i, const GroupSignal& s) {
  if (i < 1 || i > channels_)
    throw InvalidParameter("channel " + std::to_string(i) + " outside [1, " + std::to_string(channels_) + "]");
  if (!same_group(group_, s.group())) throw IncompatibleOperands("channel signal on a different group");
  const std::size_t n = group_size();
  for (std::size_t g = 0; g < n; ++g) values_[(i - 1) * n + g] = s[static_cast<Element>(g)];
}

std::vector<double> project(const ChannelSignal& x, Element g) {
  if (g >= x.group_size()) throw InvalidParameter("projection element outside the group");
  std::vector<double> out(x.channels());
  for (std::size_t i = 0; i < x.channels(); ++i) out[i] = x.at(i, g);
  return out;
}

std::vector<double> shift_flat(const FiniteGroup& group, Element g, std::span<const double> x) {
  const std::size_t n = group.size();
  if (g >= n) throw InvalidParameter("shift element " + std::to_string(g) + " outside the group");
  if (x.size() % n != 0) throw IncompatibleOperands("buffer length is not a multiple of |G|");
  const Element gi = group.inverse(g);
  std::vector<double> out(x.size());
  for (std::size_t base = 0; base < x.size(); base += n)
    for (Element h = 0; h < n; ++h) out[base + h] = x[base + group.mul(gi, h)];
  return out;
}

ChannelSignal shift_vectorized(Element g, const ChannelSignal& x) {
  return ChannelSignal(x.group(), x.channels(), shift_flat(*x.group(), g, x.values()));
}

}  // namespace gconv
