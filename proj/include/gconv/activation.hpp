#pragma once

#include <span>
#include <string>
#include <string_view>

namespace gconv {

/// Closed registry of component-wise activations. Serialized names are
/// "identity", "relu", "tanh" and "leaky_relu(<alpha>)".
class Activation {
 public:
  enum class Kind { identity, relu, leaky_relu, tanh };

  constexpr Activation() = default;
  static Activation identity() { return Activation(Kind::identity, 0.0); }
  static Activation relu() { return Activation(Kind::relu, 0.0); }
  static Activation leaky_relu(double alpha) { return Activation(Kind::leaky_relu, alpha); }
  static Activation tanh() { return Activation(Kind::tanh, 0.0); }

  /// Throws InvalidParameter for names outside the registry.
  static Activation parse(std::string_view name);

  Kind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  std::string name() const;

  double operator()(double x) const noexcept;
  void apply(std::span<double> values) const noexcept;

  bool operator==(const Activation&) const = default;

 private:
  constexpr Activation(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}
  Kind kind_ = Kind::relu;
  double alpha_ = 0.0;
};

}  // namespace gconv
