#pragma once

// Data-parallel inner loops shared by the network types. Every kernel has a
// serial reference and an OpenMP variant. Each output coordinate is reduced
// in the same order by both, so the two agree bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>

#include "gconv/group.hpp"

namespace gconv::kernels {

/// Compressed sparse rows with ascending column index inside each row.
struct CsrView {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::span<const std::size_t> row_ptr;  // rows + 1
  std::span<const std::size_t> col;
  std::span<const double> val;
  std::span<const double> bias;  // rows
};

/// Group structure in the form the kernels consume.
struct GroupView {
  std::size_t size = 0;
  std::span<const Element> table;
  std::span<const Element> inverse;
  explicit GroupView(const FiniteGroup& g) : size(g.size()), table(g.table()), inverse(g.inverses()) {}
};

/// Work (in multiply-adds) below which the dispatching entry points stay serial.
inline constexpr std::size_t kParallelThreshold = 1u << 14;

namespace serial {

void convolve(const GroupView& g, std::span<const double> a, std::span<const double> b,
              std::span<double> out);

/// out[(r*C + i)*n + g] = (x_i * a_r)(g) for k filters and C channels.
void filter(const GroupView& g, std::size_t channels, std::span<const double> x,
            std::span<const double> filters, std::span<double> out);

/// out = A x + b, accumulating each row in ascending column order before adding b.
void affine(const CsrView& a, std::span<const double> x, std::span<double> out);

/// The affine map applied independently at every group element (lifting).
void lifted_affine(const CsrView& a, std::size_t group_size, std::span<const double> x,
                   std::span<double> out);

}  // namespace serial

namespace parallel {

void convolve(const GroupView& g, std::span<const double> a, std::span<const double> b,
              std::span<double> out);
void filter(const GroupView& g, std::size_t channels, std::span<const double> x,
            std::span<const double> filters, std::span<double> out);
void affine(const CsrView& a, std::span<const double> x, std::span<double> out);
void lifted_affine(const CsrView& a, std::size_t group_size, std::span<const double> x,
                   std::span<double> out);

}  // namespace parallel

// Dispatching entry points used by the library.
void filter(const GroupView& g, std::size_t channels, std::span<const double> x,
            std::span<const double> filters, std::span<double> out);
void affine(const CsrView& a, std::span<const double> x, std::span<double> out);
void lifted_affine(const CsrView& a, std::size_t group_size, std::span<const double> x,
                   std::span<double> out);

}  // namespace gconv::kernels
