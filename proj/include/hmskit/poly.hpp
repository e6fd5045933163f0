#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hmskit/scalar.hpp"

namespace hmskit {

using Exponent = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial over an exact field. Terms are kept in a
/// map keyed by exponent vector, so iteration (and therefore printing) is
/// deterministic. Zero coefficients are never stored.
template <ExactField F>
class Poly {
 public:
  using Terms = std::map<Exponent, F>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const F& c) {
    Poly p(nvars);
    if (!hmskit::is_zero(c)) p.terms_.emplace(Exponent(nvars, 0), c);
    return p;
  }
  static Poly monomial(Exponent e, const F& c = F(1)) {
    Poly p(e.size());
    if (!hmskit::is_zero(c)) p.terms_.emplace(std::move(e), c);
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t i) {
    Exponent e(nvars, 0);
    e.at(i) = 1;
    return monomial(std::move(e));
  }

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  F coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? F(0) : it->second;
  }

  /// Adds c * x^e in place.
  void add_term(const Exponent& e, const F& c) {
    if (e.size() != nvars_) fail(ErrorKind::domain, "exponent length does not match variable count");
    if (hmskit::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = it->second + c;
      if (hmskit::is_zero(it->second)) terms_.erase(it);
    }
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    check_compatible(a, b);
    Poly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    check_compatible(a, b);
    Poly r(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend Poly operator*(const F& s, const Poly& p) {
    Poly r(p.nvars_);
    if (hmskit::is_zero(s)) return r;
    for (const auto& [e, c] : p.terms_) r.terms_.emplace(e, s * c);
    return r;
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// d/dx_i
  Poly partial(std::size_t i) const {
    if (i >= nvars_) fail(ErrorKind::domain, "partial derivative: variable index out of range");
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent d = e;
      --d[i];
      r.add_term(d, F(static_cast<long>(e[i])) * c);
    }
    return r;
  }

  /// Exact division by the monomial x^e; every term must be divisible.
  Poly divide_monomial(const Exponent& m) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponent d = e;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (d[i] < m[i]) fail(ErrorKind::domain, "monomial does not divide polynomial");
        d[i] -= m[i];
      }
      r.terms_.emplace(std::move(d), c);
    }
    return r;
  }

  /// Re-indexes variables: variable i of this polynomial becomes variable
  /// target[i] of a ring with nvars variables.
  Poly relabel(std::size_t nvars, std::span<const std::size_t> target) const {
    if (target.size() != nvars_) fail(ErrorKind::domain, "relabel: map length mismatch");
    Poly r(nvars);
    for (const auto& [e, c] : terms_) {
      Exponent d(nvars, 0);
      for (std::size_t i = 0; i < nvars_; ++i) d.at(target[i]) += e[i];
      r.add_term(d, c);
    }
    return r;
  }

  template <ExactField G, class Fn>
  Poly<G> map_coefficients(Fn&& fn) const {
    Poly<G> r(nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
    return r;
  }

  /// Human readable form, highest exponent (lexicographically) first.
  std::string to_string(std::span<const std::string> names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string coef = hmskit::to_string(c);
      bool negative = !coef.empty() && coef.front() == '-' && coef.find_first_of("+-", 1) == std::string::npos;
      if (negative) coef.erase(0, 1);
      if (coef.find_first_of("+-", 0) != std::string::npos) coef = "(" + coef + ")";
      if (first) {
        if (negative) os << '-';
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += '*';
        mono += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        os << coef;
      } else {
        if (coef != "1") os << coef << '*';
        os << mono;
      }
    }
    return os.str();
  }

 private:
  static void check_compatible(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) fail(ErrorKind::domain, "polynomials have different variable counts");
  }

  std::size_t nvars_ = 0;
  Terms terms_;
};

template <ExactField F>
std::string to_string(const Poly<F>& p) {
  return p.to_string();
}

/// Rectangular matrix of polynomials, row major.
template <ExactField F>
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
      : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, Poly<F>(nvars)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return nvars_; }
  Poly<F>& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly<F>& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::domain, "polynomial matrix product: shape mismatch");
    PolyMatrix c(a.rows_, b.cols_, a.nvars_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend PolyMatrix operator-(const PolyMatrix& a) {
    PolyMatrix c = a;
    for (auto& p : c.data_) p = -p;
    return c;
  }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Is this p * Id?
  bool is_scalar(const Poly<F>& p) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!((*this)(i, j) == (i == j ? p : Poly<F>(nvars_)))) return false;
    return true;
  }

  template <class Fn>
  PolyMatrix transform(std::size_t nvars, Fn&& fn) const {
    PolyMatrix out(rows_, cols_, nvars);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = fn(data_[i]);
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t nvars_ = 0;
  std::vector<Poly<F>> data_;
};

}  // namespace hmskit
