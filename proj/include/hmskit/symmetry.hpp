#pragma once

// Diagonal symmetry groups of invertible polynomials, stored additively:
// (r_1, ..., r_n) in (Q/Z)^n stands for diag(exp(2 pi i r_1), ...).

#include <algorithm>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hmskit/linalg.hpp"
#include "hmskit/polyforms.hpp"

namespace hmskit {

class DiagonalSymmetry {
 public:
  DiagonalSymmetry() = default;
  explicit DiagonalSymmetry(std::vector<Rat> residues) : r_(std::move(residues)) {
    for (auto& x : r_) x = frac(x);
  }
  static DiagonalSymmetry identity(std::size_t n) { return DiagonalSymmetry(std::vector<Rat>(n, Rat(0))); }

  std::size_t size() const { return r_.size(); }
  const std::vector<Rat>& residues() const { return r_; }
  const Rat& operator[](std::size_t i) const { return r_[i]; }

  friend DiagonalSymmetry operator+(const DiagonalSymmetry& a, const DiagonalSymmetry& b) {
    if (a.size() != b.size()) fail(ErrorKind::domain, "symmetries act on different numbers of variables");
    std::vector<Rat> r(a.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.r_[i] + b.r_[i];
    return DiagonalSymmetry(std::move(r));
  }
  DiagonalSymmetry negated() const {
    std::vector<Rat> r(size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = -r_[i];
    return DiagonalSymmetry(std::move(r));
  }
  bool is_identity() const {
    return std::all_of(r_.begin(), r_.end(), [](const Rat& x) { return is_zero(x); });
  }

  friend bool operator==(const DiagonalSymmetry& a, const DiagonalSymmetry& b) { return a.r_ == b.r_; }
  friend bool operator<(const DiagonalSymmetry& a, const DiagonalSymmetry& b) { return a.r_ < b.r_; }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < r_.size(); ++i) s += (i ? "," : "") + r_[i].get_str();
    return s;
  }

 private:
  std::vector<Rat> r_;
};

/// Finite subgroup of (Q/Z)^n given by generators; the full element set is
/// enumerated eagerly and kept sorted.
class SymmetryGroup {
 public:
  static constexpr std::size_t max_order = 1'000'000;

  SymmetryGroup() = default;
  SymmetryGroup(std::size_t n, std::vector<DiagonalSymmetry> generators) : n_(n), gens_(std::move(generators)) {
    for (const auto& g : gens_)
      if (g.size() != n_) fail(ErrorKind::domain, "generator has the wrong number of residues");
    std::set<DiagonalSymmetry> seen{DiagonalSymmetry::identity(n_)};
    std::vector<DiagonalSymmetry> frontier{DiagonalSymmetry::identity(n_)};
    while (!frontier.empty()) {
      std::vector<DiagonalSymmetry> next;
      for (const auto& e : frontier)
        for (const auto& g : gens_) {
          DiagonalSymmetry s = e + g;
          if (seen.insert(s).second) {
            if (seen.size() > max_order) fail(ErrorKind::resource, "symmetry group too large to enumerate");
            next.push_back(std::move(s));
          }
        }
      frontier = std::move(next);
    }
    elements_.assign(seen.begin(), seen.end());
  }

  static SymmetryGroup trivial(std::size_t n) { return SymmetryGroup(n, {}); }

  std::size_t ambient() const { return n_; }
  const std::vector<DiagonalSymmetry>& generators() const { return gens_; }
  const std::vector<DiagonalSymmetry>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }

  bool contains(const DiagonalSymmetry& g) const { return std::binary_search(elements_.begin(), elements_.end(), g); }
  bool subset_of(const SymmetryGroup& other) const {
    return std::all_of(elements_.begin(), elements_.end(), [&](const auto& g) { return other.contains(g); });
  }
  /// Same element set.
  friend bool operator==(const SymmetryGroup& a, const SymmetryGroup& b) {
    return a.n_ == b.n_ && a.elements_ == b.elements_;
  }

  std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? "; " : "") + gens_[i].to_string();
    return s + ">";
  }

 private:
  std::size_t n_ = 0;
  std::vector<DiagonalSymmetry> gens_;
  std::vector<DiagonalSymmetry> elements_;
};

inline RatMatrix rational_inverse(const ExponentMatrix& A) { return inverse(RatMatrix::from_integers(A.matrix())); }

/// g lies in G_max(A) iff A g is integral.
inline bool in_gmax(const ExponentMatrix& A, const DiagonalSymmetry& g) {
  const IntMatrix& a = A.matrix();
  if (g.size() != a.rows()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += Rat(a(i, j)) * g[j];
    if (!is_integral(s)) return false;
  }
  return true;
}

/// Maximal diagonal symmetry group, generated by the columns of A^{-1}.
inline SymmetryGroup gmax(const ExponentMatrix& A) {
  RatMatrix inv = rational_inverse(A);
  const std::size_t n = A.size();
  std::vector<DiagonalSymmetry> gens;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Rat> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = inv(i, k);
    gens.emplace_back(std::move(col));
  }
  return SymmetryGroup(n, std::move(gens));
}

struct JData {
  std::vector<Rat> phi;  // row sums of A^{-1}
  Integer ell;           // least positive integer with ell * phi_i integral
  DiagonalSymmetry J;
};

inline JData j_element(const ExponentMatrix& A) {
  RatMatrix inv = rational_inverse(A);
  const std::size_t n = A.size();
  JData d;
  d.phi.assign(n, Rat(0));
  d.ell = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) d.phi[i] += inv(i, k);
    mpz_lcm(d.ell.get_mpz_t(), d.ell.get_mpz_t(), d.phi[i].get_den_mpz_t());
  }
  d.J = DiagonalSymmetry(d.phi);
  if (!in_gmax(A, d.J)) invariant_failure("J is not a maximal diagonal symmetry");
  return d;
}

/// Krawitz transpose: the h in G_max(A^T) with h^T A g integral for all g in G.
inline SymmetryGroup krawitz_transpose(const ExponentMatrix& A, const SymmetryGroup& G) {
  for (const auto& g : G.generators())
    if (!in_gmax(A, g)) fail(ErrorKind::domain, "group is not contained in G_max: " + g.to_string());
  const IntMatrix& a = A.matrix();
  const std::size_t n = A.size();
  // A g is integral for g in G_max, so pair against those integer vectors.
  std::vector<std::vector<Rat>> ag;
  for (const auto& g : G.generators()) {
    std::vector<Rat> v(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v[i] += Rat(a(i, j)) * g[j];
    ag.push_back(std::move(v));
  }
  SymmetryGroup dual_max = gmax(A.transpose());
  std::vector<DiagonalSymmetry> members;
  for (const auto& h : dual_max.elements()) {
    bool ok = true;
    for (const auto& v : ag) {
      Rat s = 0;
      for (std::size_t i = 0; i < n; ++i) s += h[i] * v[i];
      if (!is_integral(s)) {
        ok = false;
        break;
      }
    }
    if (ok) members.push_back(h);
  }
  // The members form a group; keep a short generating list.
  std::vector<DiagonalSymmetry> gens;
  SymmetryGroup span = SymmetryGroup::trivial(n);
  for (const auto& h : members) {
    if (span.contains(h)) continue;
    gens.push_back(h);
    span = SymmetryGroup(n, gens);
  }
  return SymmetryGroup(n, std::move(gens));
}

/// Every element has determinant one: residues sum to an integer.
inline bool is_sl(const SymmetryGroup& G) {
  return std::all_of(G.elements().begin(), G.elements().end(), [](const DiagonalSymmetry& g) {
    Rat s = 0;
    for (const auto& r : g.residues()) s += r;
    return is_integral(s);
  });
}

/// All subgroups, each given by a short generator list.
inline std::vector<SymmetryGroup> all_subgroups(const SymmetryGroup& G) {
  const std::size_t n = G.ambient();
  std::vector<SymmetryGroup> found{SymmetryGroup::trivial(n)};
  std::set<std::vector<DiagonalSymmetry>> keys{found[0].elements()};
  for (std::size_t i = 0; i < found.size(); ++i)
    for (const auto& g : G.elements()) {
      if (found[i].contains(g)) continue;
      auto gens = found[i].generators();
      gens.push_back(g);
      SymmetryGroup bigger(n, std::move(gens));
      if (keys.insert(bigger.elements()).second) found.push_back(std::move(bigger));
    }
  return found;
}

/// "1/2,1/2;0,1/3": semicolon separated generators, comma separated residues.
/// An empty string is the trivial group.
inline SymmetryGroup parse_group(const std::string& text, std::size_t n) {
  std::vector<DiagonalSymmetry> gens;
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty() || s == "0" || s == "trivial") return SymmetryGroup::trivial(n);
  std::stringstream gs(s);
  std::string gen;
  while (std::getline(gs, gen, ';')) {
    std::vector<Rat> r;
    std::stringstream rs(gen);
    std::string item;
    while (std::getline(rs, item, ',')) r.push_back(parse_rat(item));
    if (r.size() != n)
      fail(ErrorKind::parse, "generator '" + gen + "' has " + std::to_string(r.size()) + " residues, expected " +
                                 std::to_string(n));
    gens.emplace_back(std::move(r));
  }
  return SymmetryGroup(n, std::move(gens));
}

}  // namespace hmskit
