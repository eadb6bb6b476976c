#include "gconv/kernels.hpp"

#include <omp.h>

#include <cstddef>

namespace gconv::kernels {

namespace {

// (a * b)(g) for one g, h ascending.
inline double convolve_at(const GroupView& grp, const double* a, const double* b, std::size_t g) {
  const std::size_t n = grp.size;
  double acc = 0.0;
  for (std::size_t h = 0; h < n; ++h) acc += a[h] * b[grp.table[grp.inverse[h] * n + g]];
  return acc;
}

inline double affine_row(const CsrView& a, std::span<const double> x, std::size_t row,
                         std::size_t stride, std::size_t offset) {
  double acc = 0.0;
  for (std::size_t p = a.row_ptr[row]; p < a.row_ptr[row + 1]; ++p)
    acc += a.val[p] * x[a.col[p] * stride + offset];
  return acc + a.bias[row];
}

}  // namespace

namespace serial {

void convolve(const GroupView& g, std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
  for (std::size_t e = 0; e < g.size; ++e) out[e] = convolve_at(g, a.data(), b.data(), e);
}

void filter(const GroupView& g, std::size_t channels, std::span<const double> x,
            std::span<const double> filters, std::span<double> out) {
  const std::size_t n = g.size;
  const std::size_t k = filters.size() / n;
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t i = 0; i < channels; ++i)
      for (std::size_t e = 0; e < n; ++e)
        out[(r * channels + i) * n + e] = convolve_at(g, x.data() + i * n, filters.data() + r * n, e);
}

void affine(const CsrView& a, std::span<const double> x, std::span<double> out) {
  for (std::size_t j = 0; j < a.rows; ++j) out[j] = affine_row(a, x, j, 1, 0);
}

void lifted_affine(const CsrView& a, std::size_t group_size, std::span<const double> x,
                   std::span<double> out) {
  for (std::size_t j = 0; j < a.rows; ++j)
    for (std::size_t e = 0; e < group_size; ++e)
      out[j * group_size + e] = affine_row(a, x, j, group_size, e);
}

}  // namespace serial

namespace parallel {

void convolve(const GroupView& g, std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(g.size);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t e = 0; e < n; ++e)
    out[static_cast<std::size_t>(e)] = convolve_at(g, a.data(), b.data(), static_cast<std::size_t>(e));
}

void filter(const GroupView& g, std::size_t channels, std::span<const double> x,
            std::span<const double> filters, std::span<double> out) {
  const std::size_t n = g.size;
  const std::size_t k = filters.size() / n;
  const auto total = static_cast<std::ptrdiff_t>(k * channels * n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    const auto u = static_cast<std::size_t>(idx);
    const std::size_t e = u % n;
    const std::size_t pair = u / n;
    const std::size_t r = pair / channels, i = pair % channels;
    out[u] = convolve_at(g, x.data() + i * n, filters.data() + r * n, e);
  }
}

void affine(const CsrView& a, std::span<const double> x, std::span<double> out) {
  const auto rows = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < rows; ++j)
    out[static_cast<std::size_t>(j)] = affine_row(a, x, static_cast<std::size_t>(j), 1, 0);
}

void lifted_affine(const CsrView& a, std::size_t group_size, std::span<const double> x,
                   std::span<double> out) {
  const auto rows = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < rows; ++j) {
    const auto row = static_cast<std::size_t>(j);
    for (std::size_t e = 0; e < group_size; ++e)
      out[row * group_size + e] = affine_row(a, x, row, group_size, e);
  }
}

}  // namespace parallel

namespace {
bool worth_parallel(std::size_t work) {
  return work >= kParallelThreshold && omp_get_max_threads() > 1 && !omp_in_parallel();
}
}  // namespace

void filter(const GroupView& g, std::size_t channels, std::span<const double> x,
            std::span<const double> filters, std::span<double> out) {
  if (worth_parallel(out.size() * g.size))
    parallel::filter(g, channels, x, filters, out);
  else
    serial::filter(g, channels, x, filters, out);
}

void affine(const CsrView& a, std::span<const double> x, std::span<double> out) {
  if (worth_parallel(a.val.size()))
    parallel::affine(a, x, out);
  else
    serial::affine(a, x, out);
}

void lifted_affine(const CsrView& a, std::size_t group_size, std::span<const double> x,
                   std::span<double> out) {
  if (worth_parallel(a.val.size() * group_size))
    parallel::lifted_affine(a, group_size, x, out);
  else
    serial::lifted_affine(a, group_size, x, out);
}

}  // namespace gconv::kernels
