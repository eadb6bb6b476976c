#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gconv/kernels.hpp"
#include "gconv/signal.hpp"

namespace gconv {

/// x -> A x + b with A stored as nonzero triplets. A stored value is nonzero
/// iff it differs from 0.0 exactly; there is no threshold.
class AffineMap {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
    bool operator==(const Entry&) const = default;
  };

  /// Throws InvalidStructure on zero values, duplicates or out-of-range indices.
  AffineMap(std::size_t rows, std::size_t cols, std::vector<Entry> entries,
            std::vector<double> bias);

  /// Row-major dense matrix; exact zeros are dropped.
  static AffineMap from_dense(std::size_t rows, std::size_t cols, std::span<const double> matrix,
                              std::vector<double> bias);
  static AffineMap zero(std::size_t rows, std::size_t cols);
  static AffineMap identity(std::size_t n);
  /// The map x -> c (all linear coefficients zero).
  static AffineMap constant(std::size_t cols, std::vector<double> c);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return val_.size(); }
  std::span<const double> bias() const noexcept { return bias_; }

  /// Triplets in canonical (row, col) order.
  std::vector<Entry> entries() const;
  double coefficient(std::size_t row, std::size_t col) const;
  std::vector<double> to_dense() const;

  std::vector<double> apply(std::span<const double> x) const;
  void apply_into(std::span<const double> x, std::span<double> out) const;

  /// ||b||_0 + ||A||_0.
  std::size_t l0_norm() const noexcept;

  kernels::CsrView csr() const noexcept;

  bool operator==(const AffineMap&) const = default;

 private:
  AffineMap() = default;
  void build(std::vector<Entry> entries);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_;
  std::vector<double> val_;
  std::vector<double> bias_;
};

std::vector<double> apply(const AffineMap& v, std::span<const double> x);
std::size_t l0_norm(const AffineMap& v);

/// The affine map x -> f(g(x)), re-sparsified.
AffineMap compose(const AffineMap& f, const AffineMap& g);

/// Count of entries that are not exactly zero.
std::size_t l0_count(std::span<const double> v);

/// F applied along every fixed group element: R^{[cols] x G} -> R^{[rows] x G}.
class LiftedMap {
 public:
  LiftedMap(AffineMap map, GroupPtr group);

  ChannelSignal operator()(const ChannelSignal& x) const;
  const AffineMap& map() const noexcept { return map_; }
  const GroupPtr& group() const noexcept { return group_; }

 private:
  AffineMap map_;
  GroupPtr group_;
};

LiftedMap lift(const AffineMap& v, GroupPtr group);

}  // namespace gconv
