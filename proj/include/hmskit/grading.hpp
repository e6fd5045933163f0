#pragma once

// The abelian grading group L of an invertible polynomial and friends.
//
// A grading group is presented by generators x_1, ..., x_n, c (the variable
// degrees and the degree of W) modulo integer relation rows over Z^{n+1}.
// For an exponent matrix A the relations are the rows of [A | -1]; the
// Sebastiani-Thom sum and the M-grading of a symmetry group only add rows.
// Elements are stored in the coordinates of a Smith form of the relation
// matrix, which makes equality canonical.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hmskit/int_matrix.hpp"
#include "hmskit/poly.hpp"

namespace hmskit {

/// Element of a presented abelian group Z^r + (+) Z/d_i.
struct LElement {
  std::vector<std::int64_t> free;     // r integers
  std::vector<std::int64_t> torsion;  // residues in [0, d_i)

  auto operator<=>(const LElement&) const = default;
  bool operator==(const LElement&) const = default;

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < free.size(); ++i) os << (i ? "," : "") << free[i];
    if (!torsion.empty()) {
      os << ';';
      for (std::size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i];
    }
    return os.str() + ')';
  }
};

class GradingContext {
 public:
  /// Group generated by x_1..x_n, c modulo the rows of `relations`
  /// (an m x (n+1) integer matrix, column n being c).
  static GradingContext from_relations(std::size_t nvars, IntMatrix relations) {
    if (relations.rows() > 0 && relations.cols() != nvars + 1)
      fail(ErrorKind::domain, "relation matrix must have n+1 columns");
    if (relations.rows() == 0) relations = IntMatrix(0, nvars + 1);
    GradingContext ctx;
    ctx.nvars_ = nvars;
    ctx.relations_ = std::move(relations);
    ctx.smith_ = smith_normal_form(ctx.relations_);
    const std::size_t g = nvars + 1;
    for (std::size_t i = 0; i < ctx.smith_.rank; ++i) {
      const Integer& d = ctx.smith_.D(i, i);
      if (d != 1) {
        ctx.torsion_idx_.push_back(i);
        ctx.torsion_.push_back(to_int64(d));
      }
    }
    for (std::size_t i = ctx.smith_.rank; i < g; ++i) ctx.free_idx_.push_back(i);
    // Orient a rank-one free part so that deg c is non-negative.
    if (ctx.free_idx_.size() == 1) {
      const std::size_t col = ctx.free_idx_[0];
      if (ctx.smith_.V(nvars, col) < 0) ctx.smith_.V.negate_col(col);
    }
    ctx.v_inverse_ = unimodular_inverse(ctx.smith_.V);
    for (std::size_t i = 0; i <= nvars; ++i) {
      std::vector<Integer> raw(g, 0);
      raw[i] = 1;
      LElement e = ctx.element(raw);
      if (i < nvars) {
        ctx.deg_x_.push_back(std::move(e));
      } else {
        ctx.deg_c_ = std::move(e);
      }
    }
    return ctx;
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t free_rank() const { return free_idx_.size(); }
  const std::vector<std::int64_t>& torsion() const { return torsion_; }
  const IntMatrix& relations() const { return relations_; }
  const SmithForm& presentation() const { return smith_; }

  const LElement& deg_x(std::size_t i) const { return deg_x_.at(i); }
  const std::vector<LElement>& deg_x() const { return deg_x_; }
  const LElement& deg_c() const { return deg_c_; }

  LElement zero() const {
    return LElement{std::vector<std::int64_t>(free_rank(), 0), std::vector<std::int64_t>(torsion_.size(), 0)};
  }

  /// Image of a raw vector (coefficients of x_1..x_n, c).
  LElement element(std::span<const Integer> raw) const {
    if (raw.size() != nvars_ + 1) fail(ErrorKind::domain, "raw grading vector has wrong length");
    LElement e = zero();
    auto coord = [&](std::size_t col) {
      Integer w = 0;
      for (std::size_t i = 0; i < raw.size(); ++i) w += raw[i] * smith_.V(i, col);
      return w;
    };
    for (std::size_t k = 0; k < free_idx_.size(); ++k) e.free[k] = to_int64(coord(free_idx_[k]));
    for (std::size_t k = 0; k < torsion_idx_.size(); ++k) {
      Integer w = coord(torsion_idx_[k]);
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), w.get_mpz_t(), Integer(torsion_[k]).get_mpz_t());
      e.torsion[k] = to_int64(r);
    }
    return e;
  }
  LElement element(std::span<const std::int64_t> raw) const {
    std::vector<Integer> big(raw.begin(), raw.end());
    return element(big);
  }

  /// A raw vector mapping to e.
  std::vector<Integer> lift(const LElement& e) const {
    check(e);
    const std::size_t g = nvars_ + 1;
    std::vector<Integer> w(g, 0);
    for (std::size_t k = 0; k < free_idx_.size(); ++k) w[free_idx_[k]] = e.free[k];
    for (std::size_t k = 0; k < torsion_idx_.size(); ++k) w[torsion_idx_[k]] = e.torsion[k];
    std::vector<Integer> raw(g, 0);
    for (std::size_t j = 0; j < g; ++j)
      for (std::size_t i = 0; i < g; ++i) raw[j] += w[i] * v_inverse_(i, j);
    return raw;
  }

  LElement add(const LElement& a, const LElement& b) const {
    check(a);
    check(b);
    LElement r = a;
    for (std::size_t i = 0; i < r.free.size(); ++i) r.free[i] += b.free[i];
    for (std::size_t i = 0; i < r.torsion.size(); ++i) r.torsion[i] = (r.torsion[i] + b.torsion[i]) % torsion_[i];
    return r;
  }
  LElement negate(const LElement& a) const {
    check(a);
    LElement r = a;
    for (auto& f : r.free) f = -f;
    for (std::size_t i = 0; i < r.torsion.size(); ++i) r.torsion[i] = (torsion_[i] - r.torsion[i]) % torsion_[i];
    return r;
  }
  LElement sub(const LElement& a, const LElement& b) const { return add(a, negate(b)); }
  LElement scale(const LElement& a, std::int64_t k) const {
    check(a);
    LElement r = a;
    for (auto& f : r.free) f *= k;
    for (std::size_t i = 0; i < r.torsion.size(); ++i) {
      std::int64_t v = (r.torsion[i] * (k % torsion_[i])) % torsion_[i];
      r.torsion[i] = v < 0 ? v + torsion_[i] : v;
    }
    return r;
  }

  LElement monomial_degree(const Exponent& e) const {
    if (e.size() != nvars_) fail(ErrorKind::domain, "exponent length does not match grading");
    LElement r = zero();
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i] != 0) r = add(r, scale(deg_x_[i], static_cast<std::int64_t>(e[i])));
    return r;
  }

  /// Every relation row, evaluated on the stored degrees, vanishes in L.
  bool relations_hold() const {
    for (std::size_t r = 0; r < relations_.rows(); ++r) {
      LElement acc = zero();
      for (std::size_t i = 0; i <= nvars_; ++i) {
        const LElement& g = i < nvars_ ? deg_x_[i] : deg_c_;
        acc = add(acc, scale(g, to_int64(relations_(r, i))));
      }
      if (acc != zero()) return false;
    }
    return true;
  }

  /// Rank one with every variable of strictly positive free degree: each
  /// graded piece of the polynomial ring is then finite dimensional.
  bool positively_graded() const {
    if (free_rank() != 1) return false;
    for (const auto& d : deg_x_)
      if (d.free[0] <= 0) return false;
    return deg_c_.free[0] > 0;
  }

  void check(const LElement& e) const {
    if (e.free.size() != free_rank() || e.torsion.size() != torsion_.size())
      invariant_failure("LElement " + e.to_string() + " does not belong to this grading");
  }

 private:
  std::size_t nvars_ = 0;
  IntMatrix relations_;
  SmithForm smith_;
  IntMatrix v_inverse_;
  std::vector<std::size_t> free_idx_;
  std::vector<std::size_t> torsion_idx_;
  std::vector<std::int64_t> torsion_;
  std::vector<LElement> deg_x_;
  LElement deg_c_;
};

using GradingPtr = std::shared_ptr<const GradingContext>;

/// Relations [A | -1] for a square exponent matrix.
inline IntMatrix exponent_relations(const IntMatrix& A) {
  IntMatrix rel(A.rows(), A.cols() + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) rel(i, j) = A(i, j);
    rel(i, A.cols()) = -1;
  }
  return rel;
}

/// L for the invertible polynomial with exponent matrix A.
inline GradingContext grading_group(const IntMatrix& A) {
  if (A.rows() != A.cols()) fail(ErrorKind::domain, "exponent matrix must be square");
  if (determinant(A) == 0) fail(ErrorKind::domain, "exponent matrix is singular");
  return GradingContext::from_relations(A.cols(), exponent_relations(A));
}

/// Grading of a disconnected sum: L1 (+) L2 / (c1 - c2). Variables of the
/// second summand follow those of the first.
inline GradingContext sum_grading(const GradingContext& a, const GradingContext& b) {
  const std::size_t n1 = a.nvars(), n2 = b.nvars(), n = n1 + n2;
  const IntMatrix& ra = a.relations();
  const IntMatrix& rb = b.relations();
  IntMatrix rel(ra.rows() + rb.rows(), n + 1);
  for (std::size_t r = 0; r < ra.rows(); ++r) {
    for (std::size_t j = 0; j < n1; ++j) rel(r, j) = ra(r, j);
    rel(r, n) = ra(r, n1);
  }
  for (std::size_t r = 0; r < rb.rows(); ++r) {
    for (std::size_t j = 0; j < n2; ++j) rel(ra.rows() + r, n1 + j) = rb(r, j);
    rel(ra.rows() + r, n) = rb(r, n2);
  }
  return GradingContext::from_relations(n, std::move(rel));
}

/// Image of an element of a summand's grading inside the sum grading.
/// `offset` is the index of the summand's first variable in the sum.
inline LElement embed_summand(const GradingContext& part, const GradingContext& sum, std::size_t offset,
                              const LElement& e) {
  std::vector<Integer> raw = part.lift(e);
  std::vector<Integer> big(sum.nvars() + 1, 0);
  for (std::size_t i = 0; i < part.nvars(); ++i) big.at(offset + i) = raw[i];
  big[sum.nvars()] = raw[part.nvars()];
  return sum.element(big);
}

/// Same generators, same relation lattice: the identity on generators
/// induces an isomorphism of the two presented groups.
inline bool same_grading(const GradingContext& a, const GradingContext& b) {
  if (a.nvars() != b.nvars()) return false;
  if (a.free_rank() != b.free_rank() || a.torsion() != b.torsion()) return false;
  return same_row_lattice(a.relations(), b.relations());
}

/// Gradings isomorphic after renumbering the variables of b by perm
/// (variable i of a corresponds to variable perm[i] of b).
inline bool same_grading_up_to(const GradingContext& a, const GradingContext& b, std::span<const std::size_t> perm) {
  if (a.nvars() != b.nvars() || perm.size() != a.nvars()) return false;
  const IntMatrix& rb = b.relations();
  IntMatrix moved(rb.rows(), rb.cols());
  for (std::size_t r = 0; r < rb.rows(); ++r) {
    for (std::size_t i = 0; i < a.nvars(); ++i) moved(r, i) = rb(r, perm[i]);
    moved(r, a.nvars()) = rb(r, b.nvars());
  }
  return a.free_rank() == b.free_rank() && a.torsion() == b.torsion() && same_row_lattice(a.relations(), moved);
}

/// Coset representatives of L / Z c: free part in [0, deg c) and every
/// torsion residue, in lexicographic order.
inline std::vector<LElement> lbar_representatives(const GradingContext& ctx) {
  if (ctx.free_rank() == 0) fail(ErrorKind::domain, "degenerate grading: L has no free part");
  if (ctx.free_rank() > 1 || ctx.deg_c().free[0] == 0)
    fail(ErrorKind::unsupported, "generator set would be infinite: L/Zc is not finite");
  const std::int64_t period = ctx.deg_c().free[0];
  const auto& tors = ctx.torsion();
  std::int64_t classes = 1;
  for (auto d : tors) classes *= d;
  std::vector<LElement> out;
  for (std::int64_t f = 0; f < period; ++f)
    for (std::int64_t idx = 0; idx < classes; ++idx) {
      LElement e = ctx.zero();
      e.free[0] = f;
      std::int64_t rest = idx;
      for (std::size_t k = tors.size(); k-- > 0;) {
        e.torsion[k] = rest % tors[k];
        rest /= tors[k];
      }
      out.push_back(std::move(e));
    }
  return out;
}

/// Number of classes of L / Z c, from the Smith invariants of the
/// presentation with c added as a relation.
inline Integer quotient_order(const GradingContext& ctx) {
  IntMatrix rel = ctx.relations();
  IntMatrix extra(1, ctx.nvars() + 1);
  extra(0, ctx.nvars()) = 1;
  SmithForm s = smith_normal_form(IntMatrix::vstack(rel, extra));
  if (s.rank < ctx.nvars() + 1) return 0;  // infinite
  Integer order = 1;
  for (const auto& d : s.invariants()) order *= d;
  return order;
}

}  // namespace hmskit
