#pragma once

#include <span>

namespace gconv {

/// ||a - b||_inf / max(||a||_inf, ||b||_inf), and 0 when both vectors vanish.
double relative_deviation(std::span<const double> a, std::span<const double> b);

/// |a - b| / max(|a|, |b|), and 0 when both vanish.
double relative_gap(double a, double b);

}  // namespace gconv
