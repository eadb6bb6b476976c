#include "gconv/activation.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "gconv/error.hpp"

namespace gconv {

Activation Activation::parse(std::string_view name) {
  if (name == "identity") return identity();
  if (name == "relu") return relu();
  if (name == "tanh") return tanh();
  constexpr std::string_view prefix = "leaky_relu(";
  if (name.starts_with(prefix) && name.ends_with(")")) {
    const std::string arg(name.substr(prefix.size(), name.size() - prefix.size() - 1));
    std::size_t used = 0;
    double alpha = 0.0;
    try {
      alpha = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == arg.size() && !arg.empty() && std::isfinite(alpha)) return leaky_relu(alpha);
  }
  throw InvalidParameter("unknown activation '" + std::string(name) + "'");
}

std::string Activation::name() const {
  switch (kind_) {
    case Kind::identity: return "identity";
    case Kind::relu: return "relu";
    case Kind::tanh: return "tanh";
    case Kind::leaky_relu: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "leaky_relu(%.17g)", alpha_);
      return buf;
    }
  }
  return "identity";
}

double Activation::operator()(double x) const noexcept {
  switch (kind_) {
    case Kind::identity: return x;
    case Kind::relu: return x > 0.0 ? x : 0.0;
    case Kind::leaky_relu: return x > 0.0 ? x : alpha_ * x;
    case Kind::tanh: return std::tanh(x);
  }
  return x;
}

void Activation::apply(std::span<double> values) const noexcept {
  if (kind_ == Kind::identity) return;
  for (double& v : values) v = (*this)(v);
}

}  // namespace gconv
