#include "gconv/affine.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "gconv/error.hpp"

namespace gconv {

AffineMap::AffineMap(std::size_t rows, std::size_t cols, std::vector<Entry> entries,
                     std::vector<double> bias)
    : rows_(rows), cols_(cols), bias_(std::move(bias)) {
  if (rows_ == 0 || cols_ == 0) throw InvalidStructure("affine map needs positive rows and cols");
  if (bias_.size() != rows_)
    throw InvalidStructure("bias length " + std::to_string(bias_.size()) + " differs from rows " +
                           std::to_string(rows_));
  for (const auto& e : entries) {
    if (e.row >= rows_ || e.col >= cols_)
      throw InvalidStructure("triplet (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                             ") outside a " + std::to_string(rows_) + "x" + std::to_string(cols_) + " map");
    if (e.value == 0.0)
      throw InvalidStructure("triplet (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                             ") stores an explicit zero");
  }
  build(std::move(entries));
}

void AffineMap::build(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].row == entries[i - 1].row && entries[i].col == entries[i - 1].col)
      throw InvalidStructure("duplicate triplet (" + std::to_string(entries[i].row) + ", " +
                             std::to_string(entries[i].col) + ")");
  row_ptr_.assign(rows_ + 1, 0);
  col_.resize(entries.size());
  val_.resize(entries.size());
  for (std::size_t p = 0; p < entries.size(); ++p) {
    ++row_ptr_[entries[p].row + 1];
    col_[p] = entries[p].col;
    val_[p] = entries[p].value;
  }
  for (std::size_t j = 0; j < rows_; ++j) row_ptr_[j + 1] += row_ptr_[j];
}

AffineMap AffineMap::from_dense(std::size_t rows, std::size_t cols, std::span<const double> matrix,
                                std::vector<double> bias) {
  if (matrix.size() != rows * cols) throw InvalidStructure("dense matrix size differs from rows*cols");
  std::vector<Entry> entries;
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t c = 0; c < cols; ++c)
      if (const double v = matrix[j * cols + c]; v != 0.0) entries.push_back({j, c, v});
  return AffineMap(rows, cols, std::move(entries), std::move(bias));
}

AffineMap AffineMap::zero(std::size_t rows, std::size_t cols) {
  return AffineMap(rows, cols, {}, std::vector<double>(rows, 0.0));
}

AffineMap AffineMap::identity(std::size_t n) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, 1.0});
  return AffineMap(n, n, std::move(entries), std::vector<double>(n, 0.0));
}

AffineMap AffineMap::constant(std::size_t cols, std::vector<double> c) {
  const std::size_t rows = c.size();
  return AffineMap(rows, cols, {}, std::move(c));
}

std::vector<AffineMap::Entry> AffineMap::entries() const {
  std::vector<Entry> out;
  out.reserve(val_.size());
  for (std::size_t j = 0; j < rows_; ++j)
    for (std::size_t p = row_ptr_[j]; p < row_ptr_[j + 1]; ++p) out.push_back({j, col_[p], val_[p]});
  return out;
}

double AffineMap::coefficient(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) throw InvalidParameter("coefficient index outside the map");
  const auto first = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
  const auto last = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return val_[static_cast<std::size_t>(it - col_.begin())];
}

std::vector<double> AffineMap::to_dense() const {
  std::vector<double> m(rows_ * cols_, 0.0);
  for (std::size_t j = 0; j < rows_; ++j)
    for (std::size_t p = row_ptr_[j]; p < row_ptr_[j + 1]; ++p) m[j * cols_ + col_[p]] = val_[p];
  return m;
}

std::vector<double> AffineMap::apply(std::span<const double> x) const {
  std::vector<double> out(rows_);
  apply_into(x, out);
  return out;
}

void AffineMap::apply_into(std::span<const double> x, std::span<double> out) const {
  if (x.size() != cols_)
    throw IncompatibleOperands("input length " + std::to_string(x.size()) + " differs from cols " +
                               std::to_string(cols_));
  if (out.size() != rows_) throw IncompatibleOperands("output length differs from rows");
  kernels::affine(csr(), x, out);
}

std::size_t AffineMap::l0_norm() const noexcept { return val_.size() + l0_count(bias_); }

kernels::CsrView AffineMap::csr() const noexcept {
  return kernels::CsrView{rows_, cols_, row_ptr_, col_, val_, bias_};
}

std::vector<double> apply(const AffineMap& v, std::span<const double> x) { return v.apply(x); }

std::size_t l0_norm(const AffineMap& v) { return v.l0_norm(); }

std::size_t l0_count(std::span<const double> v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](double x) { return x != 0.0; }));
}

AffineMap compose(const AffineMap& f, const AffineMap& g) {
  if (f.cols() != g.rows())
    throw IncompatibleOperands("cannot compose: f has " + std::to_string(f.cols()) + " cols, g has " +
                               std::to_string(g.rows()) + " rows");
  const auto fa = f.csr();
  const auto ga = g.csr();
  std::vector<AffineMap::Entry> entries;
  std::vector<double> bias(f.rows());
  std::vector<double> row(g.cols());
  std::vector<char> touched(g.cols());
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < f.rows(); ++j) {
    cols.clear();
    double b = 0.0;
    for (std::size_t p = fa.row_ptr[j]; p < fa.row_ptr[j + 1]; ++p) {
      const std::size_t k = fa.col[p];
      const double w = fa.val[p];
      for (std::size_t q = ga.row_ptr[k]; q < ga.row_ptr[k + 1]; ++q) {
        const std::size_t c = ga.col[q];
        if (!touched[c]) {
          touched[c] = 1;
          row[c] = 0.0;
          cols.push_back(c);
        }
        row[c] += w * ga.val[q];
      }
      b += w * ga.bias[k];
    }
    bias[j] = b + fa.bias[j];
    std::sort(cols.begin(), cols.end());
    for (const std::size_t c : cols) {
      if (row[c] != 0.0) entries.push_back({j, c, row[c]});
      touched[c] = 0;
    }
  }
  return AffineMap(f.rows(), g.cols(), std::move(entries), std::move(bias));
}

LiftedMap::LiftedMap(AffineMap map, GroupPtr group) : map_(std::move(map)), group_(std::move(group)) {
  if (!group_) throw InvalidParameter("lifting needs a group");
}

ChannelSignal LiftedMap::operator()(const ChannelSignal& x) const {
  if (!same_group(group_, x.group())) throw IncompatibleOperands("lifted map applied on a different group");
  if (x.channels() != map_.cols())
    throw IncompatibleOperands("lifted map expects " + std::to_string(map_.cols()) + " channels, got " +
                               std::to_string(x.channels()));
  std::vector<double> out(map_.rows() * group_->size());
  kernels::lifted_affine(map_.csr(), group_->size(), x.values(), out);
  return ChannelSignal(group_, map_.rows(), std::move(out));
}

LiftedMap lift(const AffineMap& v, GroupPtr group) { return LiftedMap(v, std::move(group)); }

}  // namespace gconv
