#include "gconv/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "gconv/error.hpp"

namespace gconv {

double relative_deviation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw IncompatibleOperands("relative deviation of vectors of different length");
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) || std::isnan(b[i])) return std::nan("");
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
  }
  return scale == 0.0 ? 0.0 : diff / scale;
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace gconv
