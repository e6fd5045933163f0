#include <gtest/gtest.h>

#include <set>

#include "hmskit/hmskit.hpp"
#include "properties.hpp"

using namespace hmskit;

namespace {

void expect_relations_hold(const InvertiblePolynomial& p) {
  const GradingContext& g = p.grading();
  const IntMatrix& A = p.exponents().matrix();
  for (std::size_t i = 0; i < A.rows(); ++i) {
    LElement s = g.zero();
    for (std::size_t j = 0; j < A.cols(); ++j) s = g.add(s, g.scale(g.deg_x(j), to_int64(A(i, j))));
    EXPECT_EQ(s, g.deg_c()) << p.describe() << " row " << i;
  }
}

std::vector<std::int64_t> free_degrees(const GradingContext& g) {
  std::vector<std::int64_t> out;
  for (const auto& d : g.deg_x()) out.push_back(d.free[0]);
  return out;
}

}  // namespace

TEST(Grading, TransposedD4) {
  InvertiblePolynomial p = parse_atom_expression("D4t");
  const GradingContext& g = p.grading();
  EXPECT_EQ(g.free_rank(), 1u);
  EXPECT_TRUE(g.torsion().empty());
  EXPECT_EQ(free_degrees(g), (std::vector<std::int64_t>{1, 3}));
  EXPECT_EQ(g.deg_c().free[0], 6);
}

TEST(Grading, TransposedDnDegreesFollowTheAtom) {
  for (int n = 3; n <= 9; ++n) {
    InvertiblePolynomial p = parse_atom_expression("D" + std::to_string(n) + "t");
    EXPECT_EQ(free_degrees(p.grading()), (std::vector<std::int64_t>{1, n - 1}));
    EXPECT_EQ(p.grading().deg_c().free[0], 2 * (n - 1));
  }
}

TEST(Grading, TypeA) {
  for (int m = 1; m <= 8; ++m) {
    InvertiblePolynomial p = parse_atom_expression("A" + std::to_string(m));
    EXPECT_EQ(free_degrees(p.grading()), (std::vector<std::int64_t>{1}));
    EXPECT_EQ(p.grading().deg_c().free[0], m + 1);
    EXPECT_TRUE(p.grading().torsion().empty());
    auto reps = lbar_representatives(p.grading());
    ASSERT_EQ(reps.size(), static_cast<std::size_t>(m + 1));
    for (int k = 0; k <= m; ++k) EXPECT_EQ(reps[static_cast<std::size_t>(k)].free[0], k);
  }
}

TEST(Grading, TorsionOfSums) {
  InvertiblePolynomial a1a1 = parse_atom_expression("A1+A1");
  EXPECT_EQ(a1a1.grading().torsion(), (std::vector<std::int64_t>{2}));
  EXPECT_EQ(a1a1.grading().free_rank(), 1u);
  // deg x and deg y agree in the free part and differ by the torsion generator.
  const auto& dx = a1a1.grading().deg_x(0);
  const auto& dy = a1a1.grading().deg_x(1);
  EXPECT_EQ(dx.free, dy.free);
  EXPECT_NE(dx.torsion, dy.torsion);
  EXPECT_EQ(parse_atom_expression("A2+A2").grading().torsion(), (std::vector<std::int64_t>{3}));
  EXPECT_EQ(grading_group(IntMatrix{{2, 0}, {0, 2}}).torsion(), (std::vector<std::int64_t>{2}));
}

TEST(Grading, SumGradingAgreesWithDirectConstruction) {
  for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"A1", "A1"}, {"A2", "A2"}, {"A2", "D4t"}, {"D4", "A3"}, {"D5t", "D4"}}) {
    InvertiblePolynomial pa = parse_atom_expression(a), pb = parse_atom_expression(b);
    GradingContext s = sum_grading(pa.grading(), pb.grading());
    GradingContext direct = grading_group(st_sum(pa, pb).exponents().matrix());
    EXPECT_TRUE(same_grading(s, direct)) << a << "+" << b;
    GradingContext swapped = sum_grading(pb.grading(), pa.grading());
    EXPECT_EQ(swapped.free_rank(), s.free_rank());
    EXPECT_EQ(swapped.torsion(), s.torsion());
  }
  // A sum with the empty polynomial changes nothing.
  InvertiblePolynomial a3 = parse_atom_expression("A3");
  EXPECT_TRUE(same_grading(sum_grading(a3.grading(), empty_polynomial().grading()), a3.grading()));
}

TEST(Grading, RelationsHoldForEveryInput) {
  for (const auto& expr : props::small_determinant_inputs(24)) expect_relations_hold(parse_atom_expression(expr));
}

TEST(Grading, LbarRepresentativesMatchQuotientOrder) {
  for (const auto& expr : props::small_determinant_inputs(24)) {
    InvertiblePolynomial p = parse_atom_expression(expr);
    const GradingContext& g = p.grading();
    auto reps = lbar_representatives(g);
    // L / Zc is Z^n modulo the rows of A, of order |det A|.
    const Integer det = abs(determinant(p.exponents().matrix()));
    EXPECT_EQ(Integer(reps.size()), det) << expr;
    EXPECT_EQ(quotient_order(g), det) << expr;
    std::set<LElement> seen(reps.begin(), reps.end());
    EXPECT_EQ(seen.size(), reps.size());
    EXPECT_TRUE(seen.count(g.zero()));
    // Reduction mod c of r + c is r itself, and every shift by a variable
    // degree lands on some representative.
    const std::int64_t c = g.deg_c().free[0];
    auto reduce = [&](LElement e) {
      std::int64_t q = e.free[0] >= 0 ? e.free[0] / c : -((-e.free[0] + c - 1) / c);
      return g.sub(e, g.scale(g.deg_c(), q));
    };
    for (const auto& r : reps) {
      EXPECT_EQ(reduce(g.add(r, g.deg_c())), r);
      for (const auto& d : g.deg_x()) EXPECT_TRUE(seen.count(reduce(g.add(r, d))));
    }
  }
}

TEST(Grading, LbarRejectsDegenerateInput) {
  GradingContext rank0 = GradingContext::from_relations(1, IntMatrix{{2, 0}, {0, 1}});
  EXPECT_THROW(lbar_representatives(rank0), Error);
}

TEST(Grading, LiftRoundTrips) {
  for (const auto& expr : {"D4", "A2+A2", "A1+A1+A1", "D5t+A2"}) {
    InvertiblePolynomial p = parse_atom_expression(expr);
    const GradingContext& g = p.grading();
    for (const auto& r : lbar_representatives(g)) EXPECT_EQ(g.element(g.lift(r)), r);
  }
}

TEST(MGrading, WorkedD4Example) {
  const ExponentMatrix A(IntMatrix{{3, 0}, {1, 2}});
  GradingContext M = m_grading(A, parse_group("1/3,1/3", 2));
  EXPECT_EQ(M.free_rank(), 1u);
  EXPECT_TRUE(M.torsion().empty());
  EXPECT_EQ(free_degrees(M), (std::vector<std::int64_t>{1, 1}));
  EXPECT_EQ(M.deg_c().free[0], 3);
}

TEST(MGrading, GeneratedByJGivesQuasiDegrees) {
  for (const auto& expr : props::small_determinant_inputs(16)) {
    InvertiblePolynomial p = parse_atom_expression(expr);
    JData j = j_element(p.exponents());
    GradingContext M = m_grading(p.exponents(), SymmetryGroup(p.nvars(), {j.J}));
    ASSERT_EQ(M.free_rank(), 1u) << expr;
    EXPECT_TRUE(M.torsion().empty()) << expr;
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      Rat want = Rat(j.ell) * j.phi[i];
      EXPECT_EQ(Rat(M.deg_x(i).free[0]), want) << expr << " variable " << i;
    }
    EXPECT_EQ(Integer(M.deg_c().free[0]), j.ell) << expr;
  }
}

TEST(MGrading, FullGroupGivesL) {
  for (const auto& expr : props::small_determinant_inputs(16)) {
    InvertiblePolynomial p = parse_atom_expression(expr);
    EXPECT_TRUE(same_grading(m_grading(p.exponents(), gmax(p.exponents())), p.grading())) << expr;
  }
}

TEST(MGrading, Preconditions) {
  const ExponentMatrix A(IntMatrix{{3, 0}, {1, 2}});
  EXPECT_THROW(m_grading(A, SymmetryGroup::trivial(2)), Error);       // J missing
  EXPECT_THROW(m_grading(A, parse_group("1/5,0", 2)), Error);         // not in G_max
}
