#pragma once

#include <cstddef>
#include <vector>

#include "hmskit/grading.hpp"
#include "hmskit/symmetry.hpp"

namespace hmskit {

/// Character group M of H = (image of phi) * G, as a quotient of L.
///
/// A character sum m_i x_i + m_c c of K is trivial on the one-parameter
/// subgroup phi iff sum m_i ell phi_i + m_c ell = 0, and trivial on G iff
/// sum m_i g_i is integral for every generator g. Those characters are added
/// to the relations of L.
inline GradingContext m_grading(const ExponentMatrix& A, const SymmetryGroup& G) {
  const std::size_t n = A.size();
  if (G.ambient() != n) fail(ErrorKind::domain, "group acts on the wrong number of variables");
  for (const auto& g : G.generators())
    if (!in_gmax(A, g)) fail(ErrorKind::domain, "group is not contained in G_max: " + g.to_string());
  JData jd = j_element(A);
  if (!G.contains(jd.J)) fail(ErrorKind::domain, "group does not contain J = (" + jd.J.to_string() + ")");

  // Unknowns: m_1..m_n, m_c, then one slack integer per generator.
  const std::size_t k = G.generators().size();
  IntMatrix sys(1 + k, n + 1 + k);
  for (std::size_t i = 0; i < n; ++i) {
    Rat v = Rat(jd.ell) * jd.phi[i];
    sys(0, i) = v.get_num();
  }
  sys(0, n) = jd.ell;
  for (std::size_t r = 0; r < k; ++r) {
    const auto& g = G.generators()[r];
    Integer den = 1;
    for (std::size_t i = 0; i < n; ++i) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), g[i].get_den_mpz_t());
    for (std::size_t i = 0; i < n; ++i) {
      Rat v = Rat(den) * g[i];
      sys(1 + r, i) = v.get_num();
    }
    sys(1 + r, n + 1 + r) = -den;
  }
  IntMatrix ker = integer_kernel(sys);
  IntMatrix extra(ker.cols(), n + 1);
  for (std::size_t b = 0; b < ker.cols(); ++b)
    for (std::size_t i = 0; i <= n; ++i) extra(b, i) = ker(i, b);
  IntMatrix rel = IntMatrix::vstack(exponent_relations(A.matrix()), extra);
  return GradingContext::from_relations(n, std::move(rel));
}

}  // namespace hmskit
