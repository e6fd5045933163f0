#pragma once

// Exact scalars: arbitrary precision integers and rationals (GMP), plus the
// Gaussian rationals Q(i) for the few factorizations that need sqrt(-1).

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>

#include "hmskit/error.hpp"

namespace hmskit {

using Integer = mpz_class;
/// Reduced fraction with positive denominator. GMP keeps results of
/// arithmetic canonical; make_rat canonicalizes explicit construction.
using Rat = mpq_class;

inline Rat make_rat(const Integer& num, const Integer& den) {
  if (den == 0) fail(ErrorKind::domain, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(const Integer& x) { return sgn(x) == 0; }

inline std::string to_string(const Integer& x) { return x.get_str(); }
inline std::string to_string(const Rat& x) { return x.get_str(); }

/// Parses "p" or "p/q" (optional sign, surrounding whitespace not allowed).
inline Rat parse_rat(const std::string& text) {
  Rat r;
  if (text.empty() || r.set_str(text, 10) != 0)
    fail(ErrorKind::parse, "not a rational number: '" + text + "'");
  if (r.get_den() == 0) fail(ErrorKind::parse, "zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

inline std::int64_t to_int64(const Integer& x) {
  if (!x.fits_slong_p()) fail(ErrorKind::resource, "integer exceeds 64 bits: " + x.get_str());
  return x.get_si();
}

/// Fractional part in [0, 1).
inline Rat frac(const Rat& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rat r = x - Rat(q);
  return r;
}

inline bool is_integral(const Rat& x) { return x.get_den() == 1; }

/// a + b*i with a, b rational.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rat re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRat i() { return {Rat(0), Rat(1)}; }

  const Rat& re() const { return re_; }
  const Rat& im() const { return im_; }

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    return {Rat(a.re_ + b.re_), Rat(a.im_ + b.im_)};
  }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    return {Rat(a.re_ - b.re_), Rat(a.im_ - b.im_)};
  }
  friend GaussRat operator-(const GaussRat& a) { return {Rat(-a.re_), Rat(-a.im_)}; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {Rat(a.re_ * b.re_ - a.im_ * b.im_), Rat(a.re_ * b.im_ + a.im_ * b.re_)};
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    Rat norm = b.re_ * b.re_ + b.im_ * b.im_;
    if (sgn(norm) == 0) fail(ErrorKind::domain, "division by zero");
    GaussRat conj{b.re_, Rat(-b.im_)};
    GaussRat num = a * conj;
    return {Rat(num.re_ / norm), Rat(num.im_ / norm)};
  }
  GaussRat& operator+=(const GaussRat& o) { return *this = *this + o; }
  GaussRat& operator-=(const GaussRat& o) { return *this = *this - o; }
  GaussRat& operator*=(const GaussRat& o) { return *this = *this * o; }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rat re_{0};
  Rat im_{0};
};

inline bool is_zero(const GaussRat& x) { return sgn(x.re()) == 0 && sgn(x.im()) == 0; }

inline std::string to_string(const GaussRat& x) {
  if (is_zero(x.im())) return x.re().get_str();
  std::string im = x.im() == 1 ? "i" : x.im() == -1 ? "-i" : x.im().get_str() + "*i";
  if (is_zero(x.re())) return im;
  return x.re().get_str() + (im.front() == '-' ? "" : "+") + im;
}

/// The operations the exact linear algebra and polynomial code rely on.
template <class F>
concept ExactField = requires(const F& a, const F& b) {
  { a + b } -> std::convertible_to<F>;
  { a - b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a / b } -> std::convertible_to<F>;
  { -a } -> std::convertible_to<F>;
  { a == b } -> std::convertible_to<bool>;
  { is_zero(a) } -> std::convertible_to<bool>;
  { to_string(a) } -> std::convertible_to<std::string>;
  F(1);
};

static_assert(ExactField<Rat>);
static_assert(ExactField<GaussRat>);

/// Coefficient embedding Q -> F.
template <ExactField F>
F from_rat(const Rat& r) {
  if constexpr (std::same_as<F, Rat>) {
    return r;
  } else {
    return F(r);
  }
}

}  // namespace hmskit
