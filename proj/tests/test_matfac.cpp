#include <gtest/gtest.h>

#include "hmskit/hmskit.hpp"
#include "properties.hpp"

using namespace hmskit;

namespace {

std::vector<std::string> xy{"x", "y"};

template <ExactField F>
bool same_mf(const MatrixFactorization<F>& a, const MatrixFactorization<F>& b) {
  return a.P0() == b.P0() && a.P1() == b.P1() && a.d0() == b.d0() && a.d1() == b.d1() && a.W() == b.W();
}

}  // namespace

TEST(MatrixFactorization, IdentitySuite) {
  EXPECT_EQ(props::mf_identity_suite(50, 424242), "");
}

TEST(MatrixFactorization, ResidueOfTransposedD4) {
  MF k = residue_mf_D(4);
  EXPECT_EQ(k.W().to_string(xy), "x^3*y + y^2");
  ASSERT_EQ(k.P0().rank(), 2u);
  EXPECT_EQ(k.d0()(0, 0).to_string(xy), "-y");
  EXPECT_EQ(k.d0()(0, 1).to_string(xy), "x^2*y");
  EXPECT_EQ(k.d0()(1, 0).to_string(xy), "x");
  EXPECT_EQ(k.d0()(1, 1).to_string(xy), "y");
  EXPECT_EQ(props::check_mf(k, "D4t residue"), "");
}

TEST(MatrixFactorization, ResidueOfTypeA) {
  for (int m = 1; m <= 6; ++m) {
    MF k = residue_mf_A(m);
    EXPECT_EQ(k.d1()(0, 0).to_string(), "x1");
    EXPECT_EQ(k.d0()(0, 0), Poly<Rat>::monomial(Exponent{static_cast<std::uint32_t>(m)}));
  }
}

TEST(MatrixFactorization, ConstructorRejectsBadData) {
  InvertiblePolynomial p = parse_atom_expression("A2");
  auto g = p.grading_ptr();
  const Poly<Rat> x = Poly<Rat>::variable(1, 0);
  // a * b != W.
  EXPECT_THROW(mf_from_pair(g, p.W(), x, x, g->zero()), Error);
  // Composites fine, degrees wrong.
  PolyMatrix<Rat> d0(1, 1, 1), d1(1, 1, 1);
  d0(0, 0) = x * x;
  d1(0, 0) = x;
  EXPECT_THROW(MF(g, p.W(), GradedFreeModule{{g->zero()}}, GradedFreeModule{{g->zero()}}, d0, d1), Error);
  // Wrong shape.
  PolyMatrix<Rat> wide(1, 2, 1);
  EXPECT_THROW(MF(g, p.W(), GradedFreeModule{{g->zero()}}, GradedFreeModule{{g->zero()}}, wide, d1), Error);
}

TEST(MatrixFactorization, TranslationSquaresToTwistByC) {
  for (const auto& name : {"A3", "D4t", "D5", "A2+A1"}) {
    InvertiblePolynomial p = parse_atom_expression(name);
    MF k = residue_mf(p);
    EXPECT_TRUE(same_mf(translate_mf(translate_mf(k)), shift_mf(k, p.grading().deg_c()))) << name;
    EXPECT_EQ(props::check_mf(translate_mf(k), name), "");
  }
}

TEST(MatrixFactorization, ShiftComposes) {
  InvertiblePolynomial p = parse_atom_expression("D5t");
  const GradingContext& g = p.grading();
  MF k = residue_mf(p);
  LElement a = g.deg_x(0), b = g.deg_x(1);
  EXPECT_TRUE(same_mf(shift_mf(shift_mf(k, a), b), shift_mf(k, g.add(a, b))));
  EXPECT_TRUE(same_mf(shift_mf(k, g.zero()), k));
}

TEST(Koszul, ShapeAndShifts) {
  for (const auto& name : {"A4", "D4", "D6t", "A1+A1+A1", "A2+D4t"}) {
    InvertiblePolynomial p = parse_atom_expression(name);
    MF k = koszul_mf(p);
    const std::size_t half = std::size_t{1} << (p.nvars() - 1);
    EXPECT_EQ(k.P0().rank(), half) << name;
    EXPECT_EQ(k.P1().rank(), half) << name;
    EXPECT_EQ(k.P0().shifts[0], p.grading().zero()) << name;
  }
}

TEST(Koszul, GammaChoiceValidation) {
  InvertiblePolynomial p = parse_atom_expression("D4");
  // Terms in exponent order: x y^2, then x^3; x^3 cannot go to y.
  EXPECT_THROW(koszul_gamma(p.W(), {0, 1}), Error);
  EXPECT_NO_THROW(koszul_gamma(p.W(), {1, 0}));
  EXPECT_THROW(koszul_gamma(p.W(), {0}), Error);
  std::vector<Poly<Rat>> bad(2, Poly<Rat>(2));
  EXPECT_THROW(koszul_mf(p.grading_ptr(), p.W(), bad, p.grading().zero()), Error);
}

TEST(Tensor, RanksAndUnit) {
  MF a = residue_mf_A(2), d = residue_mf_D(4);
  MF t = tensor_mf(a, d);
  EXPECT_EQ(t.P0().rank(), 2 * a.P0().rank() * d.P0().rank());
  EXPECT_EQ(props::check_mf(t, "A2 x D4t"), "");
  MF u = tensor_mf(a, unit_mf());
  EXPECT_EQ(u.P0().rank(), a.P0().rank());
  EXPECT_EQ(u.d0(), a.d0());
  EXPECT_EQ(u.d1(), a.d1());
}

TEST(Tensor, CollectionsOfSums) {
  for (const auto& name : {"A2+A2", "A2+D4t", "D4t+A3", "A1+A1+A1"}) {
    InvertiblePolynomial p = parse_atom_expression(name);
    Collection<Rat> c = exceptional_collection(p);
    std::size_t expect = 1;
    for (const auto& a : p.atoms()) expect *= static_cast<std::size_t>(a.rank);
    EXPECT_EQ(c.size(), expect) << name;
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_EQ(props::check_mf(c.objects[i], c.labels[i]), "");
      EXPECT_TRUE(c.objects[i].W() == p.W());
    }
  }
}

TEST(Collections, Labels) {
  Collection<Rat> d4 = exceptional_collection(parse_atom_expression("D4t"));
  EXPECT_EQ(d4.labels, (std::vector<std::string>{"R/(y)[1]", "R/(x^3+y)[1]", "R/m", "R/m(-1)"}));
  Collection<Rat> a3 = exceptional_collection(parse_atom_expression("A3"));
  EXPECT_EQ(a3.labels, (std::vector<std::string>{"R/m", "R/m(-1)", "R/m(-2)"}));
  EXPECT_EQ(exceptional_collection(parse_atom_expression("D4t+A2")).size(), 8u);
  try {
    exceptional_collection(parse_atom_expression("D4"));
    ADD_FAILURE() << "untransposed D atom accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported);
  }
}

TEST(ChangeField, KeepsIdentities) {
  MF k = residue_mf_D(5);
  auto kg = change_field<GaussRat>(k);
  EXPECT_EQ(props::check_mf(kg, "D5t over Q(i)"), "");
}
