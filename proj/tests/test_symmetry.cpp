#include <gtest/gtest.h>

#include <map>

#include "hmskit/hmskit.hpp"
#include "properties.hpp"

using namespace hmskit;

namespace {

std::vector<std::string> strings(const DiagonalSymmetry& g) {
  std::vector<std::string> out;
  for (const auto& r : g.residues()) out.push_back(r.get_str());
  return out;
}

DiagonalSymmetry reduce(std::vector<Rat> v) {
  for (auto& x : v) x = frac(x);
  return DiagonalSymmetry(std::move(v));
}

/// G* by the exponent-vector pairing: h = prod rhobar_i^{r_i} is kept when
/// r A^{-1} a^T is integral for every g = prod rho_i^{a_i} in G.
SymmetryGroup pairing_oracle(const ExponentMatrix& A, const SymmetryGroup& G) {
  const std::size_t n = A.size();
  const RatMatrix inv = rational_inverse(A);
  const RatMatrix inv_t = inv.transpose();
  const long d = Integer(abs(determinant(A.matrix()))).get_si();
  std::map<DiagonalSymmetry, std::vector<long>> dual;  // element of G_max(A^T) -> exponents r
  std::vector<long> r(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      std::vector<Rat> v(n, Rat(0));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) v[a] += inv_t(a, b) * r[b];
      dual.emplace(reduce(v), r);
      return;
    }
    for (long k = 0; k < d; ++k) {
      r[i] = k;
      rec(i + 1);
    }
  };
  rec(0);
  std::vector<DiagonalSymmetry> members;
  for (const auto& [h, rr] : dual) {
    bool ok = true;
    for (const auto& g : G.elements()) {
      // a = A g is the exponent vector of g in terms of the rho_k.
      std::vector<Rat> a(n, Rat(0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i] += Rat(A.matrix()(i, j)) * g[j];
      Rat s = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s += Rat(rr[i]) * inv(i, j) * a[j];
      if (!is_integral(s)) {
        ok = false;
        break;
      }
    }
    if (ok) members.push_back(h);
  }
  return SymmetryGroup(n, members);
}

}  // namespace

TEST(Gmax, Examples) {
  const ExponentMatrix d4(IntMatrix{{3, 0}, {1, 2}});
  SymmetryGroup g = gmax(d4);
  EXPECT_EQ(g.order(), 6u);
  EXPECT_TRUE(g.contains(DiagonalSymmetry({make_rat(1, 3), make_rat(5, 6)})));
  EXPECT_TRUE(g.contains(DiagonalSymmetry({Rat(0), make_rat(1, 2)})));
  EXPECT_EQ(SymmetryGroup(2, {DiagonalSymmetry({make_rat(1, 3), make_rat(5, 6)}),
                              DiagonalSymmetry({Rat(0), make_rat(1, 2)})}),
            g);
  for (int m = 1; m <= 8; ++m) {
    SymmetryGroup a = gmax(ExponentMatrix(IntMatrix{{m + 1}}));
    EXPECT_EQ(a.order(), static_cast<std::size_t>(m + 1));
    EXPECT_EQ(SymmetryGroup(1, {DiagonalSymmetry({make_rat(1, m + 1)})}), a);
  }
  EXPECT_EQ(gmax(ExponentMatrix(IntMatrix{{1, 0}, {0, 1}})).order(), 1u);
}

TEST(Gmax, OrderIsDeterminant) {
  for (const auto& expr : props::small_determinant_inputs(24)) {
    InvertiblePolynomial p = parse_atom_expression(expr);
    EXPECT_EQ(Integer(gmax(p.exponents()).order()), abs(determinant(p.exponents().matrix()))) << expr;
  }
}

TEST(JElement, Examples) {
  JData d4 = j_element(ExponentMatrix(IntMatrix{{3, 0}, {1, 2}}));
  EXPECT_EQ(d4.phi, (std::vector<Rat>{make_rat(1, 3), make_rat(1, 3)}));
  EXPECT_EQ(d4.ell, 3);
  EXPECT_EQ(strings(d4.J), (std::vector<std::string>{"1/3", "1/3"}));
  for (int m = 1; m <= 6; ++m) {
    const ExponentMatrix A(IntMatrix{{m + 1}});
    JData j = j_element(A);
    EXPECT_EQ(j.phi[0], make_rat(1, m + 1));
    EXPECT_EQ(SymmetryGroup(1, {j.J}), gmax(A));
  }
  JData id = j_element(ExponentMatrix(IntMatrix{{1, 0}, {0, 1}}));
  EXPECT_TRUE(id.J.is_identity());
}

TEST(JElement, LiesInGmaxAndScalesToIntegers) {
  for (const auto& expr : props::small_determinant_inputs(24)) {
    InvertiblePolynomial p = parse_atom_expression(expr);
    JData j = j_element(p.exponents());
    EXPECT_TRUE(gmax(p.exponents()).contains(j.J));
    for (const auto& f : j.phi) EXPECT_TRUE(is_integral(Rat(j.ell) * f));
  }
}

TEST(Krawitz, WorkedD4Pair) {
  const ExponentMatrix wstar(IntMatrix{{3, 1}, {0, 2}});  // u^3 v + v^2
  SymmetryGroup G = parse_group("1/2,1/2", 2);
  EXPECT_TRUE(is_sl(G));
  SymmetryGroup Gt = krawitz_transpose(wstar, G);
  EXPECT_EQ(Gt, parse_group("1/3,1/3", 2));
  EXPECT_EQ(Gt.order(), 3u);
  EXPECT_FALSE(is_sl(Gt));
  EXPECT_EQ(krawitz_transpose(wstar.transpose(), Gt), G);
}

TEST(Krawitz, DegenerateCases) {
  const ExponentMatrix a4(IntMatrix{{5}});
  EXPECT_EQ(krawitz_transpose(a4, SymmetryGroup::trivial(1)), gmax(a4));
  EXPECT_EQ(krawitz_transpose(a4, gmax(a4)).order(), 1u);
  EXPECT_THROW(krawitz_transpose(a4, parse_group("1/3", 1)), Error);
}

TEST(Krawitz, AgreesWithExponentPairingOracle) {
  for (const auto& expr : props::small_determinant_inputs(12)) {
    InvertiblePolynomial p = parse_atom_expression(expr);
    for (const auto& G : all_subgroups(gmax(p.exponents())))
      EXPECT_EQ(krawitz_transpose(p.exponents(), G), pairing_oracle(p.exponents(), G)) << expr << " " << G.to_string();
  }
}

TEST(Krawitz, InvolutiveOnAllSubgroups) {
  std::size_t checked = 0;
  EXPECT_EQ(props::krawitz_suite(12, &checked), "");
  EXPECT_GT(checked, 100u);
}

TEST(IsSl, Examples) {
  EXPECT_TRUE(is_sl(parse_group("1/2,1/2", 2)));
  EXPECT_FALSE(is_sl(parse_group("1/3,0", 2)));
  EXPECT_TRUE(is_sl(SymmetryGroup::trivial(2)));
}

TEST(Subgroups, CountsForCyclicAndKleinGroups) {
  // Z/12 has one subgroup per divisor; Z/2 x Z/2 has five.
  EXPECT_EQ(all_subgroups(gmax(ExponentMatrix(IntMatrix{{12}}))).size(), 6u);
  EXPECT_EQ(all_subgroups(gmax(parse_atom_expression("A1+A1").exponents())).size(), 5u);
}

TEST(ParseGroup, Errors) {
  EXPECT_THROW(parse_group("1/2", 2), Error);
  EXPECT_THROW(parse_group("1/x,0", 2), Error);
  EXPECT_EQ(parse_group("", 3).order(), 1u);
}
