#pragma once

// Graded matrix factorizations.
//
// Conventions. A slot with shift t stands for the free module S(t), whose
// generator sits in degree -t; a degree-preserving map S(t) -> S(t') is
// multiplication by a polynomial of degree t' - t.
//   d0 : P0 -> P1        entry (t, s) has degree shift(P1, t) - shift(P0, s)
//   d1 : P1 -> P0(c)     entry (s, t) has degree shift(P0, s) + c - shift(P1, t)
// The module represented is coker(d1). Both composites equal W * Id.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hmskit/grading.hpp"
#include "hmskit/poly.hpp"
#include "hmskit/polyforms.hpp"

namespace hmskit {

struct GradedFreeModule {
  std::vector<LElement> shifts;

  std::size_t rank() const { return shifts.size(); }
  bool operator==(const GradedFreeModule&) const = default;
};

/// Does every term of p have degree d?
template <ExactField F>
bool homogeneous_of_degree(const GradingContext& g, const Poly<F>& p, const LElement& d) {
  for (const auto& [e, c] : p.terms())
    if (g.monomial_degree(e) != d) return false;
  return true;
}

/// Degree of a non-zero homogeneous polynomial.
template <ExactField F>
LElement homogeneous_degree(const GradingContext& g, const Poly<F>& p) {
  if (p.is_zero()) fail(ErrorKind::domain, "zero polynomial has no degree");
  LElement d = g.monomial_degree(p.terms().begin()->first);
  if (!homogeneous_of_degree(g, p, d)) fail(ErrorKind::domain, "polynomial is not homogeneous: " + p.to_string());
  return d;
}

template <ExactField F>
class MatrixFactorization {
 public:
  MatrixFactorization() = default;
  MatrixFactorization(GradingPtr grading, Poly<F> W, GradedFreeModule P0, GradedFreeModule P1, PolyMatrix<F> d0,
                      PolyMatrix<F> d1)
      : grading_(std::move(grading)),
        w_(std::move(W)),
        p0_(std::move(P0)),
        p1_(std::move(P1)),
        d0_(std::move(d0)),
        d1_(std::move(d1)) {
    std::vector<std::string> problems = audit();
    if (!problems.empty()) fail(ErrorKind::domain, "invalid matrix factorization: " + problems.front());
  }

  const GradingContext& grading() const { return *grading_; }
  const GradingPtr& grading_ptr() const { return grading_; }
  const Poly<F>& W() const { return w_; }
  std::size_t nvars() const { return w_.nvars(); }
  const GradedFreeModule& P0() const { return p0_; }
  const GradedFreeModule& P1() const { return p1_; }
  const PolyMatrix<F>& d0() const { return d0_; }
  const PolyMatrix<F>& d1() const { return d1_; }

  /// Empty list iff shapes, both composites and every entry degree check out.
  std::vector<std::string> audit() const {
    std::vector<std::string> out;
    if (!grading_) return {"no grading"};
    const GradingContext& g = *grading_;
    if (w_.nvars() != g.nvars()) return {"W and grading disagree on the number of variables"};
    const std::size_t r0 = p0_.rank(), r1 = p1_.rank();
    if (d0_.rows() != r1 || d0_.cols() != r0) return {"d0 has the wrong shape"};
    if (d1_.rows() != r0 || d1_.cols() != r1) return {"d1 has the wrong shape"};
    if (d0_.nvars() != w_.nvars() || d1_.nvars() != w_.nvars()) return {"matrix entries live in the wrong ring"};
    for (const auto* m : {&p0_, &p1_})
      for (const auto& s : m->shifts)
        if (s.free.size() != g.free_rank() || s.torsion.size() != g.torsion().size())
          return {"slot shift " + s.to_string() + " is not an element of L"};
    if (!homogeneous_of_degree(g, w_, g.deg_c())) out.push_back("W is not homogeneous of degree c");
    if (!(d1_ * d0_).is_scalar(w_)) out.push_back("d1 * d0 != W * Id");
    if (!(d0_ * d1_).is_scalar(w_)) out.push_back("d0 * d1 != W * Id");
    for (std::size_t t = 0; t < r1; ++t)
      for (std::size_t s = 0; s < r0; ++s) {
        LElement want = g.sub(p1_.shifts[t], p0_.shifts[s]);
        if (!homogeneous_of_degree(g, d0_(t, s), want))
          out.push_back("d0(" + std::to_string(t) + "," + std::to_string(s) + ") is not of degree " + want.to_string());
        want = g.sub(g.add(p0_.shifts[s], g.deg_c()), p1_.shifts[t]);
        if (!homogeneous_of_degree(g, d1_(s, t), want))
          out.push_back("d1(" + std::to_string(s) + "," + std::to_string(t) + ") is not of degree " + want.to_string());
      }
    return out;
  }

 private:
  GradingPtr grading_;
  Poly<F> w_;
  GradedFreeModule p0_, p1_;
  PolyMatrix<F> d0_, d1_;
};

using MF = MatrixFactorization<Rat>;

/// Rank-one factorization with d1 = a, d0 = b, representing R/(a)(shift).
template <ExactField F>
MatrixFactorization<F> mf_from_pair(GradingPtr g, const Poly<F>& W, const Poly<F>& a, const Poly<F>& b,
                                    const LElement& shift) {
  if (!(a * b == W)) fail(ErrorKind::domain, "a * b != W");
  LElement da = homogeneous_degree(*g, a);
  GradedFreeModule P0{{shift}};
  GradedFreeModule P1{{g->sub(g->add(shift, g->deg_c()), da)}};
  PolyMatrix<F> d0(1, 1, W.nvars()), d1(1, 1, W.nvars());
  d0(0, 0) = b;
  d1(0, 0) = a;
  return MatrixFactorization<F>(std::move(g), W, std::move(P0), std::move(P1), std::move(d0), std::move(d1));
}

template <ExactField F>
Poly<F> to_field(const Poly<Rat>& p) {
  return p.template map_coefficients<F>([](const Rat& r) { return from_rat<F>(r); });
}

/// Residue field of x^{m+1}: the pair (x, x^m).
inline MF residue_mf_A(int m) {
  if (m < 1) fail(ErrorKind::domain, "A_m needs m >= 1");
  InvertiblePolynomial p = build(ExponentMatrix(atom_matrix(AtomKind::A, m)));
  Poly<Rat> x = Poly<Rat>::variable(1, 0);
  Poly<Rat> xm = Poly<Rat>::monomial(Exponent{static_cast<std::uint32_t>(m)});
  return mf_from_pair(p.grading_ptr(), p.W(), x, xm, p.grading().zero());
}

/// Residue field of x^{n-1} y + y^2 from its periodic resolution: both
/// differentials are [[-y, x^{n-2} y], [x, y]].
inline MF residue_mf_D(int n) {
  if (n < 3) fail(ErrorKind::domain, "D_n needs n >= 3");
  InvertiblePolynomial p = build(ExponentMatrix(atom_matrix(AtomKind::Dt, n)));
  const GradingContext& g = p.grading();
  auto deg = [&](std::int64_t k) { return g.scale(g.deg_x(0), k); };
  const auto u = static_cast<std::uint32_t>(n - 2);
  PolyMatrix<Rat> M(2, 2, 2);
  M(0, 0) = Poly<Rat>::monomial({0, 1}, Rat(-1));
  M(0, 1) = Poly<Rat>::monomial({u, 1});
  M(1, 0) = Poly<Rat>::monomial({1, 0});
  M(1, 1) = Poly<Rat>::monomial({0, 1});
  GradedFreeModule P0{{deg(n - 2), deg(0)}};
  GradedFreeModule P1{{deg(2 * n - 3), deg(n - 1)}};
  return MF(p.grading_ptr(), p.W(), std::move(P0), std::move(P1), M, M);
}

/// Data of a Koszul stabilization: W = sum_i gamma_i x_i, forms dx_I indexed
/// by bitmask I, and the shift of each form.
template <ExactField F>
struct KoszulData {
  std::vector<Poly<F>> gamma;
  std::vector<std::uint32_t> even_forms, odd_forms;  // ascending bitmasks
  std::vector<LElement> even_shifts, odd_shifts;
};

/// gamma from an assignment of each monomial of W (in term order) to one of
/// its variables.
template <ExactField F>
std::vector<Poly<F>> koszul_gamma(const Poly<F>& W, const std::vector<std::size_t>& assignment) {
  const std::size_t n = W.nvars();
  if (assignment.size() != W.size()) fail(ErrorKind::domain, "gamma choice must assign every monomial of W");
  std::vector<Poly<F>> gamma(n, Poly<F>(n));
  std::size_t k = 0;
  for (const auto& [e, c] : W.terms()) {
    std::size_t i = assignment[k++];
    if (i >= n || e[i] == 0)
      fail(ErrorKind::domain, "gamma choice assigns a monomial to a variable it does not contain");
    Exponent d = e;
    --d[i];
    gamma[i].add_term(d, c);
  }
  return gamma;
}

/// Each monomial goes to its lowest-index variable.
template <ExactField F>
std::vector<Poly<F>> default_gamma(const Poly<F>& W) {
  std::vector<std::size_t> assignment;
  for (const auto& [e, c] : W.terms()) {
    std::size_t i = 0;
    while (i < e.size() && e[i] == 0) ++i;
    if (i == e.size()) fail(ErrorKind::domain, "W has a constant term");
    assignment.push_back(i);
  }
  return koszul_gamma(W, assignment);
}

template <ExactField F>
KoszulData<F> koszul_data(const GradingContext& g, const Poly<F>& W, std::vector<Poly<F>> gamma,
                          const LElement& base) {
  const std::size_t n = W.nvars();
  if (n > 20) fail(ErrorKind::resource, "too many variables for a Koszul stabilization");
  if (gamma.size() != n) fail(ErrorKind::domain, "gamma needs one polynomial per variable");
  Poly<F> sum(n);
  for (std::size_t i = 0; i < n; ++i) sum += gamma[i] * Poly<F>::variable(n, i);
  if (!(sum == W)) fail(ErrorKind::domain, "sum gamma_i x_i != W");
  KoszulData<F> k;
  k.gamma = std::move(gamma);
  for (std::uint32_t I = 0; I < (1u << n); ++I) {
    const auto size = static_cast<std::int64_t>(std::popcount(I));
    LElement s = g.scale(g.deg_c(), (size + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
      if (I >> i & 1u) s = g.sub(s, g.deg_x(i));
    s = g.add(s, base);
    if (size % 2 == 0) {
      k.even_forms.push_back(I);
      k.even_shifts.push_back(std::move(s));
    } else {
      k.odd_forms.push_back(I);
      k.odd_shifts.push_back(std::move(s));
    }
  }
  return k;
}

/// Stabilization of the residue field: forms of even and odd degree with
/// differential contraction by the Euler field plus wedge with gamma.
template <ExactField F>
MatrixFactorization<F> koszul_mf(GradingPtr g, const Poly<F>& W, std::vector<Poly<F>> gamma, const LElement& base) {
  const std::size_t n = W.nvars();
  KoszulData<F> k = koszul_data(*g, W, std::move(gamma), base);
  std::vector<std::size_t> index(std::size_t{1} << n);
  for (std::size_t a = 0; a < k.even_forms.size(); ++a) index[k.even_forms[a]] = a;
  for (std::size_t a = 0; a < k.odd_forms.size(); ++a) index[k.odd_forms[a]] = a;

  // (Row, column) layout: target x source.
  auto differential = [&](const std::vector<std::uint32_t>& from, std::size_t rows) {
    PolyMatrix<F> d(rows, from.size(), n);
    for (std::size_t col = 0; col < from.size(); ++col) {
      const std::uint32_t I = from[col];
      int before = 0;  // members of I below i
      for (std::size_t i = 0; i < n; ++i) {
        const F sign = before % 2 ? F(-1) : F(1);
        if (I >> i & 1u) {
          d(index[I & ~(1u << i)], col) += sign * Poly<F>::variable(n, i);
          ++before;
        } else {
          d(index[I | (1u << i)], col) += sign * k.gamma[i];
        }
      }
    }
    return d;
  };
  PolyMatrix<F> d0 = differential(k.even_forms, k.odd_forms.size());
  PolyMatrix<F> d1 = differential(k.odd_forms, k.even_forms.size());
  return MatrixFactorization<F>(std::move(g), W, GradedFreeModule{k.even_shifts}, GradedFreeModule{k.odd_shifts},
                                std::move(d0), std::move(d1));
}

template <ExactField F>
MatrixFactorization<F> koszul_mf(GradingPtr g, const Poly<F>& W) {
  LElement base = g->zero();
  return koszul_mf(std::move(g), W, default_gamma(W), base);
}

inline MF koszul_mf(const InvertiblePolynomial& p) { return koszul_mf(p.grading_ptr(), p.W()); }

/// K(a): every slot shift moves by a.
template <ExactField F>
MatrixFactorization<F> shift_mf(const MatrixFactorization<F>& K, const LElement& a) {
  const GradingContext& g = K.grading();
  GradedFreeModule P0 = K.P0(), P1 = K.P1();
  for (auto& s : P0.shifts) s = g.add(s, a);
  for (auto& s : P1.shifts) s = g.add(s, a);
  return MatrixFactorization<F>(K.grading_ptr(), K.W(), std::move(P0), std::move(P1), K.d0(), K.d1());
}

/// K[1] = (P1, P0(c), -d1, -d0). Negating both maps makes K[2] = K(c) on the nose.
template <ExactField F>
MatrixFactorization<F> translate_mf(const MatrixFactorization<F>& K) {
  const GradingContext& g = K.grading();
  GradedFreeModule P1 = K.P0();
  for (auto& s : P1.shifts) s = g.add(s, g.deg_c());
  return MatrixFactorization<F>(K.grading_ptr(), K.W(), K.P1(), std::move(P1), -K.d1(), -K.d0());
}

/// The factorization of the zero polynomial in no variables with P0 = S.
inline MF unit_mf() {
  auto g = std::make_shared<const GradingContext>(GradingContext::from_relations(0, IntMatrix(0, 1)));
  return MF(g, Poly<Rat>(0), GradedFreeModule{{g->zero()}}, GradedFreeModule{}, PolyMatrix<Rat>(0, 1, 0),
            PolyMatrix<Rat>(1, 0, 0));
}

/// Tensor product over disjoint variable sets: the variables of K2 follow
/// those of K1 and the grading is the sum grading. The differential is
/// D1 (x) 1 + sigma (x) D2 with sigma the parity sign of the first factor.
template <ExactField F>
MatrixFactorization<F> tensor_mf(const MatrixFactorization<F>& K1, const MatrixFactorization<F>& K2,
                                 GradingPtr sum = nullptr) {
  const GradingContext& g1 = K1.grading();
  const GradingContext& g2 = K2.grading();
  if (!sum) sum = std::make_shared<const GradingContext>(sum_grading(g1, g2));
  const GradingContext& g = *sum;
  const std::size_t n1 = K1.nvars(), n2 = K2.nvars(), n = n1 + n2;
  if (g.nvars() != n) fail(ErrorKind::domain, "sum grading has the wrong number of variables");
  std::vector<std::size_t> map1(n1), map2(n2);
  for (std::size_t i = 0; i < n1; ++i) map1[i] = i;
  for (std::size_t i = 0; i < n2; ++i) map2[i] = n1 + i;
  auto lift1 = [&](const Poly<F>& p) { return p.relabel(n, map1); };
  auto lift2 = [&](const Poly<F>& p) { return p.relabel(n, map2); };

  // Slots of each factor: parity, index within its component, shift in the sum.
  struct Slot {
    int parity;
    std::size_t idx;
    LElement shift;
  };
  auto slots = [&](const MatrixFactorization<F>& K, const GradingContext& part, std::size_t offset) {
    std::vector<Slot> out;
    for (std::size_t i = 0; i < K.P0().rank(); ++i)
      out.push_back({0, i, embed_summand(part, g, offset, K.P0().shifts[i])});
    for (std::size_t i = 0; i < K.P1().rank(); ++i)
      out.push_back({1, i, embed_summand(part, g, offset, K.P1().shifts[i])});
    return out;
  };
  const std::vector<Slot> s1 = slots(K1, g1, 0), s2 = slots(K2, g2, n1);

  // Position of the pair (a, b) within T0 or T1.
  std::vector<std::vector<std::size_t>> pos(s1.size(), std::vector<std::size_t>(s2.size()));
  GradedFreeModule T[2];
  for (int p : {0, 1})
    for (int pa : {0, 1})
      for (std::size_t a = 0; a < s1.size(); ++a) {
        if (s1[a].parity != pa) continue;
        for (std::size_t b = 0; b < s2.size(); ++b) {
          if ((s1[a].parity + s2[b].parity) % 2 != p) continue;
          LElement sh = g.add(s1[a].shift, s2[b].shift);
          if (s1[a].parity == 1 && s2[b].parity == 1) sh = g.sub(sh, g.deg_c());
          pos[a][b] = T[p].rank();
          T[p].shifts.push_back(std::move(sh));
        }
      }

  PolyMatrix<F> D[2] = {PolyMatrix<F>(T[1].rank(), T[0].rank(), n), PolyMatrix<F>(T[0].rank(), T[1].rank(), n)};
  // Entry of a factor differential from slot `from` to slot `to`.
  auto entry = [](const MatrixFactorization<F>& K, const Slot& from, const Slot& to) -> const Poly<F>& {
    return from.parity == 0 ? K.d0()(to.idx, from.idx) : K.d1()(to.idx, from.idx);
  };
  for (std::size_t a = 0; a < s1.size(); ++a)
    for (std::size_t b = 0; b < s2.size(); ++b) {
      const int p = (s1[a].parity + s2[b].parity) % 2;
      for (std::size_t a2 = 0; a2 < s1.size(); ++a2) {
        if (s1[a2].parity == s1[a].parity) continue;
        const Poly<F>& e = entry(K1, s1[a], s1[a2]);
        if (!e.is_zero()) D[p](pos[a2][b], pos[a][b]) += lift1(e);
      }
      const F sign = s1[a].parity ? F(-1) : F(1);
      for (std::size_t b2 = 0; b2 < s2.size(); ++b2) {
        if (s2[b2].parity == s2[b].parity) continue;
        const Poly<F>& e = entry(K2, s2[b], s2[b2]);
        if (!e.is_zero()) D[p](pos[a][b2], pos[a][b]) += sign * lift2(e);
      }
    }
  Poly<F> W = lift1(K1.W()) + lift2(K2.W());
  return MatrixFactorization<F>(std::move(sum), std::move(W), std::move(T[0]), std::move(T[1]), std::move(D[0]),
                                std::move(D[1]));
}

/// Moves K into another ring: variable i becomes variable target_var[i] and
/// c goes to c. The caller guarantees this respects the relations; the
/// constructor audit rejects it otherwise.
template <ExactField F>
MatrixFactorization<F> transport_mf(const MatrixFactorization<F>& K, GradingPtr target, const Poly<F>& W,
                                    std::span<const std::size_t> target_var) {
  const GradingContext& src = K.grading();
  const std::size_t n = target->nvars();
  auto move_shift = [&](const LElement& e) {
    std::vector<Integer> raw = src.lift(e);
    std::vector<Integer> big(n + 1, 0);
    for (std::size_t i = 0; i < src.nvars(); ++i) big.at(target_var[i]) += raw[i];
    big[n] += raw[src.nvars()];
    return target->element(big);
  };
  GradedFreeModule P0, P1;
  for (const auto& s : K.P0().shifts) P0.shifts.push_back(move_shift(s));
  for (const auto& s : K.P1().shifts) P1.shifts.push_back(move_shift(s));
  auto mv = [&](const Poly<F>& p) { return p.relabel(n, target_var); };
  return MatrixFactorization<F>(std::move(target), W, std::move(P0), std::move(P1), K.d0().transform(n, mv),
                                K.d1().transform(n, mv));
}

/// Same factorization read over a larger field.
template <ExactField G>
MatrixFactorization<G> change_field(const MF& K) {
  auto conv = [&](const PolyMatrix<Rat>& m) {
    PolyMatrix<G> out(m.rows(), m.cols(), m.nvars());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_field<G>(m(i, j));
    return out;
  };
  return MatrixFactorization<G>(K.grading_ptr(), to_field<G>(K.W()), K.P0(), K.P1(), conv(K.d0()), conv(K.d1()));
}

}  // namespace hmskit
