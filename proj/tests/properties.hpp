#pragma once

// Property suites shared by the unit tests and the acceptance runner. Each
// returns an empty string on success and a description of the first failure
// otherwise.

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hmskit/hmskit.hpp"
#include "oracles.hpp"

namespace props {

using namespace hmskit;

inline std::string describe(const IntMatrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

inline bool is_diagonal_chain(const SmithForm& s) {
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j) {
      if (i != j && s.D(i, j) != 0) return false;
      if (i == j && s.D(i, i) < 0) return false;
    }
  const std::size_t m = std::min(s.D.rows(), s.D.cols());
  for (std::size_t i = 0; i < m; ++i) {
    if (i < s.rank && s.D(i, i) == 0) return false;
    if (i >= s.rank && s.D(i, i) != 0) return false;
    if (i + 1 < s.rank && !mpz_divisible_p(s.D(i + 1, i + 1).get_mpz_t(), s.D(i, i).get_mpz_t())) return false;
  }
  return true;
}

/// Random matrix with rank deficiency in about a third of the draws.
inline IntMatrix draw_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 4), kind(0, 2);
  const std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
  if (kind(rng) == 0 && r > 1 && c > 1) {
    const std::size_t k = std::min(r, c) - 1;
    return oracle::random_int_matrix(rng, r, k, 4) * oracle::random_int_matrix(rng, k, c, 4);
  }
  return oracle::random_int_matrix(rng, r, c, 9);
}

/// Smith form, integer and rational kernels on `count` random matrices.
inline std::string snf_kernel_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < count; ++trial) {
    const IntMatrix A = draw_matrix(rng);
    const SmithForm s = smith_normal_form(A);
    const std::string ctx = " for A =\n" + describe(A);
    if (!(s.U * A * s.V == s.D)) return "U A V != D" + ctx;
    const Integer du = determinant(s.U), dv = determinant(s.V);
    if (abs(du) != 1 || abs(dv) != 1) return "U or V not unimodular" + ctx;
    if (!is_diagonal_chain(s)) return "D is not a divisibility chain" + ctx;
    Integer prod = 1;
    for (std::size_t k = 1; k <= s.rank; ++k) {
      prod *= s.D(k - 1, k - 1);
      if (prod != oracle::minor_gcd(A, k)) return "invariant factors disagree with minor gcds" + ctx;
    }
    if (s.rank < std::min(A.rows(), A.cols()) && oracle::minor_gcd(A, s.rank + 1) != 0)
      return "rank disagrees with minors" + ctx;
    const RatMatrix Q = RatMatrix::from_integers(A);
    if (rank(Q) != s.rank) return "rational rank != Smith rank" + ctx;
    const IntMatrix K = integer_kernel(A);
    if (K.cols() + s.rank != A.cols()) return "integer rank-nullity fails" + ctx;
    const IntMatrix AK = A * K;
    for (std::size_t i = 0; i < AK.rows(); ++i)
      for (std::size_t j = 0; j < AK.cols(); ++j)
        if (AK(i, j) != 0) return "integer kernel vector not in kernel" + ctx;
    // The kernel basis extends to a unimodular matrix: the columns are saturated.
    if (K.cols() > 0) {
      const SmithForm sk = smith_normal_form(K);
      for (auto d : sk.invariants())
        if (d != 1) return "integer kernel is not saturated" + ctx;
    }
    const auto rk = rat_kernel(Q);
    if (rk.size() + s.rank != A.cols()) return "rational rank-nullity fails" + ctx;
    for (const auto& v : rk) {
      const auto w = Q.apply(v);
      for (const auto& x : w)
        if (x != 0) return "rational kernel vector not in kernel" + ctx;
    }
  }
  return {};
}

/// Independent recomputation of both composites and every entry degree.
template <ExactField F>
std::string check_mf(const MatrixFactorization<F>& K, const std::string& name) {
  const GradingContext& g = K.grading();
  const std::size_t r0 = K.P0().rank(), r1 = K.P1().rank();
  if (r0 != r1) return name + ": P0 and P1 have different ranks";
  auto product_is_w = [&](const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) {
        Poly<F> s(K.nvars());
        for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
        if (!(s == (i == j ? K.W() : Poly<F>(K.nvars())))) return false;
      }
    return true;
  };
  if (!product_is_w(K.d1(), K.d0())) return name + ": d1 d0 != W Id";
  if (!product_is_w(K.d0(), K.d1())) return name + ": d0 d1 != W Id";
  for (const auto& [e, c] : K.W().terms())
    if (g.monomial_degree(e) != g.deg_c()) return name + ": W not of degree c";
  for (std::size_t t = 0; t < r1; ++t)
    for (std::size_t s = 0; s < r0; ++s) {
      for (const auto& [e, c] : K.d0()(t, s).terms())
        if (g.add(K.P0().shifts[s], g.monomial_degree(e)) != K.P1().shifts[t]) return name + ": d0 not homogeneous";
      for (const auto& [e, c] : K.d1()(s, t).terms())
        if (g.add(K.P1().shifts[t], g.monomial_degree(e)) != g.add(K.P0().shifts[s], g.deg_c()))
          return name + ": d1 not homogeneous";
    }
  if (!K.audit().empty()) return name + ": audit reports " + K.audit().front();
  return {};
}

inline std::vector<std::string> atoms_up_to(int n) {
  std::vector<std::string> out;
  for (int m = 1; m <= n; ++m) out.push_back("A" + std::to_string(m));
  for (int m = 3; m <= n; ++m) {
    out.push_back("D" + std::to_string(m));
    out.push_back("D" + std::to_string(m) + "t");
  }
  return out;
}

/// Random gamma choice: each monomial of W goes to a random variable it contains.
inline std::vector<std::size_t> random_assignment(const Poly<Rat>& W, std::mt19937_64& rng) {
  std::vector<std::size_t> a;
  for (const auto& [e, c] : W.terms()) {
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) vars.push_back(i);
    a.push_back(vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)]);
  }
  return a;
}

/// Every constructed factorization for atoms of rank <= 6, and `random_gammas`
/// Koszul stabilizations with random gamma.
inline std::string mf_identity_suite(int random_gammas, std::uint64_t seed) {
  for (const auto& name : atoms_up_to(6)) {
    const InvertiblePolynomial p = parse_atom_expression(name);
    const MF k = koszul_mf(p);
    if (auto e = check_mf(k, name + " Koszul"); !e.empty()) return e;
    if (auto e = check_mf(translate_mf(k), name + " Koszul[1]"); !e.empty()) return e;
    if (auto e = check_mf(residue_mf(p), name + " residue"); !e.empty()) return e;
    if (p.atoms()[0].kind != AtomKind::D) {
      const Collection<Rat> c = exceptional_collection(p);
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (auto e = check_mf(c.objects[i], name + " " + c.labels[i]); !e.empty()) return e;
        if (auto e = check_mf(translate_mf(c.objects[i]), name + " " + c.labels[i] + "[1]"); !e.empty()) return e;
      }
    }
  }
  for (const auto& name : {"A2+A2", "A2+D4t", "A1+A1+A1", "D4+A1"}) {
    const InvertiblePolynomial p = parse_atom_expression(name);
    if (auto e = check_mf(residue_mf(p), std::string(name) + " residue"); !e.empty()) return e;
    if (auto e = check_mf(koszul_mf(p), std::string(name) + " Koszul"); !e.empty()) return e;
  }
  {
    const Collection<GaussRat> c = m_graded_d4_collection();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (auto e = check_mf(c.objects[i], "M-graded " + c.labels[i]); !e.empty()) return e;
  }
  std::mt19937_64 rng(seed);
  const std::vector<std::string> pool = {"A3", "A5", "D4", "D5t", "D6", "A2+A2", "A1+D4t", "A2+A1+A1", "D4+D4t"};
  for (int t = 0; t < random_gammas; ++t) {
    const auto& name = pool[static_cast<std::size_t>(t) % pool.size()];
    const InvertiblePolynomial p = parse_atom_expression(name);
    const auto gamma = koszul_gamma(p.W(), random_assignment(p.W(), rng));
    const MF k = koszul_mf(p.grading_ptr(), p.W(), gamma, p.grading().zero());
    if (auto e = check_mf(k, name + " random gamma #" + std::to_string(t)); !e.empty()) return e;
  }
  return {};
}

/// Sums of A and D atoms whose exponent matrix has |det| <= bound.
inline std::vector<std::string> small_determinant_inputs(int bound) {
  std::vector<std::pair<std::string, long>> atoms;
  for (int m = 1; m + 1 <= bound; ++m) atoms.emplace_back("A" + std::to_string(m), m + 1);
  for (int n = 3; 2 * (n - 1) <= bound; ++n) {
    atoms.emplace_back("D" + std::to_string(n), 2 * (n - 1));
    atoms.emplace_back("D" + std::to_string(n) + "t", 2 * (n - 1));
  }
  std::vector<std::string> out;
  // Multisets of atoms in a fixed order, product of determinants within bound.
  std::function<void(std::size_t, std::string, long)> rec = [&](std::size_t start, std::string expr, long det) {
    if (!expr.empty()) out.push_back(expr);
    for (std::size_t i = start; i < atoms.size(); ++i)
      if (det * atoms[i].second <= bound) rec(i, expr.empty() ? atoms[i].first : expr + "+" + atoms[i].first,
                                              det * atoms[i].second);
  };
  rec(0, "", 1);
  return out;
}

/// G** = G, |G| |G*| = |G_max|, and inclusion reversal over all subgroups.
inline std::string krawitz_suite(int bound, std::size_t* groups_checked = nullptr) {
  std::size_t count = 0;
  for (const auto& expr : small_determinant_inputs(bound)) {
    const InvertiblePolynomial p = parse_atom_expression(expr);
    const ExponentMatrix& A = p.exponents();
    const ExponentMatrix At = A.transpose();
    const SymmetryGroup gm = gmax(A), gmt = gmax(At);
    if (gm.order() != gmt.order()) return expr + ": |G_max| differs from its transpose";
    const auto subs = all_subgroups(gm);
    std::vector<SymmetryGroup> duals;
    for (const auto& G : subs) {
      SymmetryGroup D = krawitz_transpose(A, G);
      if (!D.subset_of(gmt)) return expr + ": G* not inside G_max(A^T) for G = " + G.to_string();
      if (G.order() * D.order() != gm.order()) return expr + ": |G| |G*| != |G_max| for G = " + G.to_string();
      if (!(krawitz_transpose(At, D) == G)) return expr + ": G** != G for G = " + G.to_string();
      duals.push_back(std::move(D));
      ++count;
    }
    for (std::size_t i = 0; i < subs.size(); ++i)
      for (std::size_t j = 0; j < subs.size(); ++j)
        if (subs[i].subset_of(subs[j]) && !duals[j].subset_of(duals[i]))
          return expr + ": transpose is not inclusion-reversing";
    if (!(krawitz_transpose(A, SymmetryGroup::trivial(A.size())) == gmt)) return expr + ": {1}* != G_max(A^T)";
    if (krawitz_transpose(A, gm).order() != 1) return expr + ": G_max* is not trivial";
  }
  if (groups_checked) *groups_checked = count;
  return {};
}

inline bool upper_unitriangular(const IntMatrix& G) {
  for (std::size_t i = 0; i < G.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (G(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

inline IntMatrix apply_ops(IntMatrix G, const std::vector<std::pair<std::size_t, MutationDirection>>& ops) {
  for (const auto& [p, d] : ops) G = mutate_collection(G, p, d);
  return G;
}

/// Braid relations, inverse pairs and Coxeter invariance on the Euler forms
/// of the given quivers.
inline std::string mutation_suite(const std::vector<std::pair<std::string, Quiver>>& quivers) {
  using D = MutationDirection;
  for (const auto& [name, q] : quivers) {
    const IntMatrix G = euler_form(q);
    const std::size_t n = G.rows();
    const auto cox = coxeter_polynomial(G);
    for (auto dir : {D::left, D::right}) {
      const D other = dir == D::left ? D::right : D::left;
      for (std::size_t i = 1; i < n; ++i) {
        const IntMatrix once = mutate_collection(G, i, dir);
        if (!upper_unitriangular(once)) return name + ": mutation left the exceptional form";
        if (coxeter_polynomial(once) != cox) return name + ": Coxeter polynomial changed";
        if (!(mutate_collection(once, i, other) == G)) return name + ": double mutation is not the identity";
        if (i + 1 < n &&
            !(apply_ops(G, {{i, dir}, {i + 1, dir}, {i, dir}}) == apply_ops(G, {{i + 1, dir}, {i, dir}, {i + 1, dir}})))
          return name + ": braid relation fails at " + std::to_string(i);
        for (std::size_t j = i + 2; j < n; ++j)
          if (!(apply_ops(G, {{i, dir}, {j, dir}}) == apply_ops(G, {{j, dir}, {i, dir}})))
            return name + ": distant mutations do not commute";
      }
    }
    // Long words keep the invariants.
    std::mt19937_64 rng(n);
    IntMatrix cur = G;
    for (int step = 0; step < 40; ++step) {
      const std::size_t p = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
      cur = mutate_collection(cur, p, step % 3 ? D::left : D::right);
      if (!upper_unitriangular(cur) || coxeter_polynomial(cur) != cox) return name + ": random word broke invariants";
    }
  }
  return {};
}

}  // namespace props
