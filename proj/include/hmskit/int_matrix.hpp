#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "hmskit/scalar.hpp"

namespace hmskit {

/// Dense rectangular matrix of arbitrary precision integers, row major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) fail(ErrorKind::parse, "ragged matrix literal");
      for (long v : r) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Integer> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::domain, "matrix product: shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  /// Block diagonal sum.
  static IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
    return m;
  }

  /// Stacks the rows of b under those of a.
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ > 0 && b.rows_ > 0 && a.cols_ != b.cols_)
      fail(ErrorKind::domain, "vstack: column mismatch");
    IntMatrix m(a.rows_ + b.rows_, a.rows_ > 0 ? a.cols_ : b.cols_);
    std::copy(a.data_.begin(), a.data_.end(), m.data_.begin());
    std::copy(b.data_.begin(), b.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(a.data_.size()));
    return m;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) fail(ErrorKind::domain, "determinant of a non-square matrix");
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::size_t rank = 0;

  /// Nonzero diagonal entries in order.
  std::vector<Integer> invariants() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
    return out;
  }
};

namespace detail {

// Position of the nonzero entry of least absolute value in the trailing block.
inline bool smallest_pivot(const IntMatrix& a, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Integer& v = a(i, j);
      if (v == 0) continue;
      Integer av = abs(v);
      if (!found || av < best) {
        found = true;
        best = av;
        pr = i;
        pc = j;
        if (best == 1) return true;
      }
    }
  return found;
}

}  // namespace detail

/// Smith normal form with transforms. Pivots on the smallest nonzero entry
/// of the remaining block.
inline SmithForm smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  IntMatrix D = A;
  IntMatrix U = IntMatrix::identity(m);
  IntMatrix V = IntMatrix::identity(n);
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    std::size_t pr = 0, pc = 0;
    if (!detail::smallest_pivot(D, t, pr, pc)) break;
    for (;;) {
      if (pr != t) {
        D.swap_rows(pr, t);
        U.swap_rows(pr, t);
      }
      if (pc != t) {
        D.swap_cols(pc, t);
        V.swap_cols(pc, t);
      }
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        Integer nq = -q;
        D.add_row(i, t, nq);
        U.add_row(i, t, nq);
        if (D(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        Integer nq = -q;
        D.add_col(j, t, nq);
        V.add_col(j, t, nq);
        if (D(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // A remainder smaller than the pivot survived; restart with it.
        detail::smallest_pivot(D, t, pr, pc);
        continue;
      }
      // Row and column cleared; enforce divisibility on the trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            D.add_row(t, i, Integer(1));
            U.add_row(t, i, Integer(1));
            divides = false;
            break;
          }
      if (!divides) {
        pr = t;
        pc = t;
        // Row t now has an entry not divisible by the pivot.
        detail::smallest_pivot(D, t, pr, pc);
        continue;
      }
      break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
  return SmithForm{std::move(U), std::move(D), std::move(V), t};
}

/// Basis (as columns) of the integer kernel {v in Z^n : A v = 0}.
inline IntMatrix integer_kernel(const IntMatrix& A) {
  SmithForm s = smith_normal_form(A);
  const std::size_t n = A.cols();
  IntMatrix K(n, n - s.rank);
  for (std::size_t j = s.rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) K(i, j - s.rank) = s.V(i, j);
  return K;
}

/// Inverse of a unimodular matrix, by adjoining the identity and running the
/// integer row reduction of a Smith form: U A V = I gives A^{-1} = V U.
inline IntMatrix unimodular_inverse(const IntMatrix& A) {
  SmithForm s = smith_normal_form(A);
  if (s.rank != A.rows() || A.rows() != A.cols()) fail(ErrorKind::domain, "matrix is not unimodular");
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1) fail(ErrorKind::domain, "matrix is not unimodular");
  return s.V * s.U;
}

/// Is v an integer combination of the rows of R?
inline bool in_row_lattice(const IntMatrix& R, std::span<const Integer> v) {
  if (v.size() != R.cols()) fail(ErrorKind::domain, "lattice membership: length mismatch");
  SmithForm s = smith_normal_form(R);
  // v = y R  <=>  v V = (y U^{-1}) D.
  for (std::size_t j = 0; j < R.cols(); ++j) {
    Integer w = 0;
    for (std::size_t i = 0; i < R.cols(); ++i) w += v[i] * s.V(i, j);
    if (j < s.rank) {
      if (!mpz_divisible_p(w.get_mpz_t(), s.D(j, j).get_mpz_t())) return false;
    } else if (w != 0) {
      return false;
    }
  }
  return true;
}

/// Do the rows of a and b generate the same sublattice of Z^n?
inline bool same_row_lattice(const IntMatrix& a, const IntMatrix& b) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!in_row_lattice(b, a.row(i))) return false;
  for (std::size_t i = 0; i < b.rows(); ++i)
    if (!in_row_lattice(a, b.row(i))) return false;
  return true;
}

}  // namespace hmskit
