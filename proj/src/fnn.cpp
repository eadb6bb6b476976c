#include "gconv/fnn.hpp"

#include <string>
#include <utility>

#include "gconv/error.hpp"

namespace gconv {

FNN::FNN(GroupPtr group, std::size_t input_channels, std::vector<AffineMap> layers,
         Activation activation)
    : group_(std::move(group)),
      input_channels_(input_channels),
      layers_(std::move(layers)),
      activation_(activation) {
  if (!group_) throw InvalidStructure("FNN needs a group");
  if (input_channels_ == 0) throw InvalidStructure("FNN needs C_0 >= 1");
  if (layers_.empty()) throw InvalidStructure("FNN needs at least one layer");
  if (layers_.front().cols() != input_dim())
    throw InvalidStructure("layer 1 has " + std::to_string(layers_.front().cols()) +
                           " cols but C_0*|G| = " + std::to_string(input_dim()));
  for (std::size_t l = 1; l < layers_.size(); ++l)
    if (layers_[l].cols() != layers_[l - 1].rows())
      throw InvalidStructure("layer " + std::to_string(l + 1) + " has " + std::to_string(layers_[l].cols()) +
                             " cols but layer " + std::to_string(l) + " has " +
                             std::to_string(layers_[l - 1].rows()) + " rows");
}

std::vector<std::size_t> FNN::architecture() const {
  std::vector<std::size_t> arch{input_dim()};
  for (const auto& v : layers_) arch.push_back(v.rows());
  return arch;
}

std::vector<double> FNN::realize(std::span<const double> x) const {
  if (x.size() != input_dim())
    throw IncompatibleOperands("FNN input has length " + std::to_string(x.size()) + ", expected " +
                               std::to_string(input_dim()));
  std::vector<double> cur(x.begin(), x.end());
  std::vector<double> next;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    next.assign(layers_[l].rows(), 0.0);
    layers_[l].apply_into(cur, next);
    if (l + 1 < layers_.size()) activation_.apply(next);
    cur.swap(next);
  }
  return cur;
}

std::vector<double> realize_fnn(const FNN& net, const ChannelSignal& x) {
  if (!same_group(net.group(), x.group())) throw IncompatibleOperands("FNN input on a different group");
  if (x.channels() != net.input_channels())
    throw IncompatibleOperands("FNN expects " + std::to_string(net.input_channels()) + " channels, got " +
                               std::to_string(x.channels()));
  return net.realize(x.values());
}

std::size_t weight_count(const FNN& net) {
  std::size_t w = 0;
  for (const auto& v : net.layers()) w += v.l0_norm();
  return w;
}

std::size_t neuron_count(const FNN& net) {
  std::size_t n = net.input_dim();
  for (const auto& v : net.layers()) n += v.rows();
  return n;
}

}  // namespace gconv
