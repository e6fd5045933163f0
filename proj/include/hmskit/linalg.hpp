#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "hmskit/int_matrix.hpp"
#include "hmskit/scalar.hpp"

namespace hmskit {

/// Dense matrix over an exact field.
template <ExactField F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != cols_) fail(ErrorKind::parse, "ragged matrix literal");
      for (long v : r) data_.push_back(F(v));
    }
  }

  static Matrix from_integers(const IntMatrix& m) {
    Matrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = from_rat<F>(Rat(m(i, j)));
    return out;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::domain, "matrix product: shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = c(i, j) + a(i, k) * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = c.data_[i] + b.data_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix c = a;
    for (auto& v : c.data_) v = -v;
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<F> apply(const std::vector<F>& v) const {
    std::vector<F> out(rows_, F(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] = out[i] + (*this)(i, j) * v[j];
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

using RatMatrix = Matrix<Rat>;

/// Reduced row echelon form in place; returns pivot columns.
template <ExactField F>
std::vector<std::size_t> row_reduce(Matrix<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    F inv = F(1) / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <ExactField F>
std::size_t rank(Matrix<F> m) {
  return row_reduce(m).size();
}

/// Basis of {v : M v = 0}, one vector per free column of the echelon form.
template <ExactField F>
std::vector<std::vector<F>> kernel(Matrix<F> m) {
  auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(m.cols(), F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<std::vector<Rat>> rat_kernel(const RatMatrix& m) { return kernel(m); }

template <ExactField F>
Matrix<F> inverse(const Matrix<F>& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) fail(ErrorKind::domain, "inverse of a non-square matrix");
  Matrix<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) fail(ErrorKind::domain, "matrix is singular");
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Coefficients c_0..c_n of det(t I - M), constant term first
/// (Faddeev-LeVerrier; exact over characteristic zero).
template <ExactField F>
std::vector<F> characteristic_polynomial(const Matrix<F>& m) {
  const std::size_t n = m.rows();
  std::vector<F> c(n + 1, F(0));
  c[n] = F(1);
  Matrix<F> mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<F> next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) = next(i, i) + c[n - k + 1];
    mk = next;
    Matrix<F> amk = m * mk;
    F tr(0);
    for (std::size_t i = 0; i < n; ++i) tr = tr + amk(i, i);
    c[n - k] = -tr / F(static_cast<long>(k));
  }
  return c;
}

/// Incremental sparse Gaussian elimination. Rows are added one at a time and
/// reduced against the stored pivots; the number of stored rows is the rank.
template <ExactField F>
class SparseEliminator {
 public:
  using Row = std::vector<std::pair<std::size_t, F>>;  // sorted by column

  /// Returns true if the row was independent of the rows added so far.
  bool add(Row row) {
    std::erase_if(row, [](const auto& e) { return is_zero(e.second); });
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) break;
      F factor = row.front().second;
      row = axpy(row, it->second, factor);
    }
    if (row.empty()) return false;
    F inv = F(1) / row.front().second;
    for (auto& e : row) e.second = e.second * inv;
    std::size_t col = row.front().first;
    pivots_.emplace(col, std::move(row));
    return true;
  }

  std::size_t rank() const { return pivots_.size(); }

 private:
  // a - f * b, where b is monic at its leading column.
  static Row axpy(const Row& a, const Row& b, const F& f) {
    Row out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, -(f * b[j].second));
        ++j;
      } else {
        F v = a[i].second - f * b[j].second;
        if (!is_zero(v)) out.emplace_back(a[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::map<std::size_t, Row> pivots_;
};

}  // namespace hmskit
