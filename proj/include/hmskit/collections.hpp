#pragma once

// Generating collections of the graded singularity category and the quiver
// vertex each object is matched with.
//
// Per atom, in vertex order:
//   A_m   : R/m, R/m(-1), ..., R/m(-m+1)
//   D_n t : R/(y)[1], R/(x^{n-1}+y)[1], R/m, R/m(-1), ..., R/m(-n+3)
// The two rank-one modules of type D sit in cohomological degree -1; without
// that translation Hom(R/(y), R/m) is already non-zero in degree 0. Sums use
// tensor products of the atom collections, the first atom varying slowest.

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hmskit/m_grading.hpp"
#include "hmskit/matfac.hpp"
#include "hmskit/quiver.hpp"

namespace hmskit {

template <ExactField F>
struct Collection {
  std::vector<MatrixFactorization<F>> objects;
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> vertices;  // 0-based vertex per factor
  std::vector<Quiver> quivers;                     // one per factor

  std::size_t size() const { return objects.size(); }
};

namespace detail {

inline std::string twist_label(const std::string& base, std::int64_t t) {
  return t == 0 ? base : base + "(" + std::to_string(t) + ")";
}

inline Collection<Rat> atom_collection(const Atom& atom, const std::vector<std::string>& names) {
  Collection<Rat> c;
  c.quivers.push_back(dynkin_quiver(atom.kind, atom.rank));
  switch (atom.kind) {
    case AtomKind::A: {
      MF m = residue_mf_A(atom.rank);
      const GradingContext& g = m.grading();
      for (int i = 0; i < atom.rank; ++i) {
        c.objects.push_back(shift_mf(m, g.scale(g.deg_x(0), -i)));
        c.labels.push_back(twist_label("R/m", -i));
      }
      break;
    }
    case AtomKind::Dt: {
      const int n = atom.rank;
      MF m = residue_mf_D(n);
      const GradingContext& g = m.grading();
      Poly<Rat> y = Poly<Rat>::variable(2, 1);
      Poly<Rat> xy = Poly<Rat>::monomial({static_cast<std::uint32_t>(n - 1), 0}) + y;
      c.objects.push_back(translate_mf(mf_from_pair(m.grading_ptr(), m.W(), y, xy, g.zero())));
      c.objects.push_back(translate_mf(mf_from_pair(m.grading_ptr(), m.W(), xy, y, g.zero())));
      const std::string& vx = names.at(atom.vars[0]);
      const std::string& vy = names.at(atom.vars[1]);
      c.labels.push_back("R/(" + vy + ")[1]");
      c.labels.push_back("R/(" + vx + "^" + std::to_string(n - 1) + "+" + vy + ")[1]");
      for (int i = 0; i >= -n + 3; --i) {
        c.objects.push_back(shift_mf(m, g.scale(g.deg_x(0), i)));
        c.labels.push_back(twist_label("R/m", i));
      }
      break;
    }
    case AtomKind::D:
      fail(ErrorKind::unsupported,
           "no L-graded collection for " + atom.name() + "; use the transposed atom " + atom.name() +
               "t, or pass a symmetry group for the D4 example");
  }
  for (std::size_t v = 0; v < c.objects.size(); ++v) c.vertices.push_back({v});
  return c;
}

template <ExactField F>
Collection<F> tensor_collections(const Collection<F>& a, const Collection<F>& b) {
  if (a.objects.empty() || b.objects.empty()) fail(ErrorKind::domain, "empty collection");
  auto sum = std::make_shared<const GradingContext>(sum_grading(a.objects[0].grading(), b.objects[0].grading()));
  Collection<F> c;
  c.quivers = a.quivers;
  c.quivers.insert(c.quivers.end(), b.quivers.begin(), b.quivers.end());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      c.objects.push_back(tensor_mf(a.objects[i], b.objects[j], sum));
      c.labels.push_back(a.labels[i] + " ⊗ " + b.labels[j]);
      auto v = a.vertices[i];
      v.insert(v.end(), b.vertices[j].begin(), b.vertices[j].end());
      c.vertices.push_back(std::move(v));
    }
  return c;
}

/// Order in which the atoms' variables were concatenated, as indices of P.
inline std::vector<std::size_t> atom_variable_order(const InvertiblePolynomial& p) {
  std::vector<std::size_t> order;
  for (const auto& a : p.atoms()) order.insert(order.end(), a.vars.begin(), a.vars.end());
  return order;
}

inline MF atom_residue(const Atom& atom) {
  switch (atom.kind) {
    case AtomKind::A: return residue_mf_A(atom.rank);
    case AtomKind::Dt: return residue_mf_D(atom.rank);
    case AtomKind::D: return koszul_mf(build(ExponentMatrix(atom_matrix(AtomKind::D, atom.rank))));
  }
  invariant_failure("unknown atom kind");
}

}  // namespace detail

/// Exceptional collection of simple objects for a sum of A and D-transpose atoms.
inline Collection<Rat> exceptional_collection(const InvertiblePolynomial& p) {
  if (p.atoms().empty()) fail(ErrorKind::domain, "the empty polynomial has no generators");
  const auto names = p.variable_names();
  Collection<Rat> c = detail::atom_collection(p.atoms()[0], names);
  for (std::size_t a = 1; a < p.atoms().size(); ++a)
    c = detail::tensor_collections(c, detail::atom_collection(p.atoms()[a], names));
  const auto order = detail::atom_variable_order(p);
  for (auto& K : c.objects) K = transport_mf(K, p.grading_ptr(), p.W(), order);
  return c;
}

/// Residue field of W: tensor product of the atoms' residue factorizations.
inline MF residue_mf(const InvertiblePolynomial& p) {
  if (p.atoms().empty()) return unit_mf();
  MF k = detail::atom_residue(p.atoms()[0]);
  for (std::size_t a = 1; a < p.atoms().size(); ++a) k = tensor_mf(k, detail::atom_residue(p.atoms()[a]));
  return transport_mf(k, p.grading_ptr(), p.W(), detail::atom_variable_order(p));
}

/// The generator E as its summands R/m(l), l over the representatives of L/Zc.
inline std::vector<MF> generator_E(const InvertiblePolynomial& p) {
  MF k = residue_mf(p);
  std::vector<MF> out;
  for (const auto& l : lbar_representatives(p.grading())) out.push_back(shift_mf(k, l));
  return out;
}

inline std::vector<std::string> generator_E_labels(const InvertiblePolynomial& p) {
  std::vector<std::string> out;
  for (const auto& l : lbar_representatives(p.grading())) out.push_back("R/m" + l.to_string());
  return out;
}

/// x^3 + x y^2 graded by the characters of <J> = <1/3(1,1)>, over Q(i) so
/// that x^2 + y^2 = (y + ix)(y - ix) splits. Simple objects:
///   v1 = R/(y+ix)(1), v2 = R/(y-ix)(1), v3 = R/(x), v4 = R/(x^2+y^2).
inline Collection<GaussRat> m_graded_d4_collection() {
  using G = GaussRat;
  const ExponentMatrix A(IntMatrix{{3, 0}, {1, 2}});
  auto g = std::make_shared<const GradingContext>(m_grading(A, SymmetryGroup(2, {j_element(A).J})));
  const Poly<G> W = to_field<G>(polynomial_from_exponents(A.matrix()));
  const Poly<G> x = Poly<G>::variable(2, 0), y = Poly<G>::variable(2, 1);
  const Poly<G> ix = G::i() * x;
  const LElement one = g->deg_x(0), zero = g->zero();
  Collection<G> c;
  c.quivers.push_back(dynkin_quiver(AtomKind::D, 4));
  c.objects.push_back(mf_from_pair(g, W, y + ix, x * (y - ix), one));
  c.objects.push_back(mf_from_pair(g, W, y - ix, x * (y + ix), one));
  c.objects.push_back(mf_from_pair(g, W, x, x * x + y * y, zero));
  c.objects.push_back(mf_from_pair(g, W, x * x + y * y, x, zero));
  c.labels = {"R/(y+i*x)(1)", "R/(y-i*x)(1)", "R/(x)", "R/(x^2+y^2)"};
  for (std::size_t v = 0; v < 4; ++v) c.vertices.push_back({v});
  return c;
}

}  // namespace hmskit
