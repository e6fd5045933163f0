#pragma once

// Directed Dynkin quivers, Ext between simple representations, the tensor
// model for disconnected sums, Euler forms and mutations.
//
// Arrows of the constructed quivers always point to the lower index:
// A_m has v_{i+1} -> v_i; D_n has v3 -> v1, v3 -> v2 and v_{i+1} -> v_i for
// i >= 3. Ext^1(S_i, S_j) counts arrows j -> i.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hmskit/hom.hpp"
#include "hmskit/linalg.hpp"
#include "hmskit/polyforms.hpp"

namespace hmskit {

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> arrows;  // (source, target), 0-based

  std::size_t size() const { return vertices.size(); }
  std::size_t arrow_count(std::size_t from, std::size_t to) const {
    std::size_t n = 0;
    for (const auto& [s, t] : arrows) n += (s == from && t == to);
    return n;
  }
};

/// A_m for kind A, the D-pattern for D and Dt. D_3 is accepted and gives
/// v1 <- v3 -> v2, which is a quiver of type A_3.
inline Quiver dynkin_quiver(AtomKind kind, int rank) {
  Quiver q;
  if (kind == AtomKind::A) {
    if (rank < 1) fail(ErrorKind::domain, "A_m needs m >= 1");
    for (int i = 1; i <= rank; ++i) q.vertices.push_back("v" + std::to_string(i));
    for (int i = 1; i < rank; ++i) q.arrows.emplace_back(i, i - 1);
    return q;
  }
  if (rank < 3) fail(ErrorKind::domain, "D_n needs n >= 3");
  for (int i = 1; i <= rank; ++i) q.vertices.push_back("v" + std::to_string(i));
  q.arrows.emplace_back(2, 0);
  q.arrows.emplace_back(2, 1);
  for (int i = 3; i < rank; ++i) q.arrows.emplace_back(i, i - 1);
  return q;
}

inline bool is_acyclic(const Quiver& q) {
  // Kahn's algorithm.
  std::vector<std::size_t> indeg(q.size(), 0);
  for (const auto& [s, t] : q.arrows) ++indeg[t];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < q.size(); ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& [s, t] : q.arrows)
      if (s == v && --indeg[t] == 0) ready.push_back(t);
  }
  return seen == q.size();
}

/// dim Hom(S_i, S_j[k]) over the path algebra. The minimal projective
/// resolution 0 -> (+)_{a : t -> i} P_t -> P_i -> S_i -> 0 has length one and
/// Hom(P_t, S_j) = delta_tj; the induced differentials vanish.
inline std::size_t simple_hom_dims(const Quiver& q, std::size_t i, std::size_t j, std::int64_t k) {
  if (i >= q.size() || j >= q.size()) fail(ErrorKind::domain, "vertex out of range");
  if (!is_acyclic(q)) fail(ErrorKind::domain, "quiver has an oriented cycle");
  std::vector<std::vector<std::size_t>> terms(2);  // vertices of P-summands in degree 0, 1
  terms[0].push_back(i);
  for (const auto& [s, t] : q.arrows)
    if (t == i) terms[1].push_back(s);
  if (k < 0 || k > 1) return 0;
  std::size_t n = 0;
  for (std::size_t v : terms[static_cast<std::size_t>(k)]) n += (v == j);
  return n;
}

/// Objects are tuples of vertices, the first factor varying slowest;
/// dims follow the Kuenneth formula.
struct BigradedTable {
  std::vector<std::vector<std::size_t>> objects;  // 0-based vertex per factor
  ExtTable table;
};

inline std::string tuple_label(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t t = 0; t < v.size(); ++t) s += (t ? "⊗S" : "S") + std::to_string(v[t] + 1);
  return s;
}

inline BigradedTable tensor_model(const std::vector<Quiver>& factors, std::int64_t kmin, std::int64_t kmax) {
  if (factors.empty()) fail(ErrorKind::domain, "tensor model needs at least one factor");
  if (kmin > kmax) fail(ErrorKind::domain, "empty shift window");
  BigradedTable out;
  out.objects = {{}};
  for (const auto& q : factors) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& prefix : out.objects)
      for (std::size_t v = 0; v < q.size(); ++v) {
        auto t = prefix;
        t.push_back(v);
        next.push_back(std::move(t));
      }
    out.objects = std::move(next);
  }
  const std::size_t n = out.objects.size();
  const auto width = static_cast<std::size_t>(kmax - kmin + 1);
  ExtTable& t = out.table;
  t.kmin = kmin;
  t.kmax = kmax;
  for (const auto& o : out.objects) t.objects.push_back(tuple_label(o));
  t.dims.assign(n, std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(width, 0)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // Polynomial in k: product over factors of sum_k dim Ext^k t^k.
      std::vector<std::size_t> poly{1};
      for (std::size_t f = 0; f < factors.size(); ++f) {
        std::vector<std::size_t> next(poly.size() + 1, 0);
        for (std::size_t e = 0; e < poly.size(); ++e)
          for (std::int64_t k : {0, 1})
            next[e + static_cast<std::size_t>(k)] +=
                poly[e] * simple_hom_dims(factors[f], out.objects[a][f], out.objects[b][f], k);
        poly = std::move(next);
      }
      for (std::size_t e = 0; e < poly.size(); ++e) {
        const auto k = static_cast<std::int64_t>(e);
        if (k >= kmin && k <= kmax) t.dims[a][b][static_cast<std::size_t>(k - kmin)] = poly[e];
      }
    }
  return out;
}

/// E_ij = delta_ij - #(arrows i -> j).
inline IntMatrix euler_matrix(const Quiver& q) {
  if (!is_acyclic(q)) fail(ErrorKind::domain, "quiver has an oriented cycle");
  IntMatrix e = IntMatrix::identity(q.size());
  for (const auto& [s, t] : q.arrows) e(s, t) -= 1;
  return e;
}

/// Gram matrix chi(S_i, S_j) = dim Hom - dim Ext^1 of the simples, which is
/// the transpose of the Euler matrix.
inline IntMatrix euler_form(const Quiver& q) { return euler_matrix(q).transpose(); }

/// Characteristic polynomial of the Coxeter matrix -E^{-T} E, constant term first.
inline std::vector<Integer> coxeter_polynomial(const IntMatrix& E) {
  if (E.rows() != E.cols()) fail(ErrorKind::domain, "Euler matrix must be square");
  RatMatrix e = RatMatrix::from_integers(E);
  RatMatrix phi = -(inverse(e.transpose()) * e);
  std::vector<Rat> p = characteristic_polynomial(phi);
  std::vector<Integer> out;
  for (const auto& c : p) {
    if (!is_integral(c)) invariant_failure("Coxeter polynomial has a non-integral coefficient");
    out.push_back(c.get_num());
  }
  return out;
}

inline std::string polynomial_string(const std::vector<Integer>& coeffs, const std::string& var = "t") {
  Poly<Rat> p(1);
  for (std::size_t e = 0; e < coeffs.size(); ++e) p.add_term(Exponent{static_cast<std::uint32_t>(e)}, Rat(coeffs[e]));
  std::vector<std::string> names{var};
  return p.to_string(names);
}

enum class MutationDirection { left, right };

/// Braid mutation of an exceptional basis at positions (i, i+1), 1-based i,
/// acting on its Gram matrix G. With g = G(i, i+1):
///   left:  (b_i, b_{i+1}) -> (b_{i+1} - g b_i, b_i)
///   right: (b_i, b_{i+1}) -> (b_{i+1}, b_i - g b_{i+1})
/// and G' = T G T^T for the corresponding change of basis T.
inline IntMatrix mutate_collection(const IntMatrix& G, std::size_t position, MutationDirection dir) {
  const std::size_t n = G.rows();
  if (G.cols() != n) fail(ErrorKind::domain, "Gram matrix must be square");
  if (position < 1 || position >= n) fail(ErrorKind::domain, "mutation position out of range");
  const std::size_t i = position - 1;
  const Integer g = G(i, i + 1);
  IntMatrix T = IntMatrix::identity(n);
  T(i, i) = 0;
  T(i + 1, i + 1) = 0;
  if (dir == MutationDirection::left) {
    T(i, i + 1) = 1;
    T(i, i) = -g;
    T(i + 1, i) = 1;
  } else {
    T(i, i + 1) = 1;
    T(i + 1, i) = 1;
    T(i + 1, i + 1) = -g;
  }
  return T * G * T.transpose();
}

}  // namespace hmskit
