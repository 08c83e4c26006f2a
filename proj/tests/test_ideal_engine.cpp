#include <algorithm>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace cremona;
using cremona::fixtures::P;
using cremona::fixtures::X;

namespace {

HomIdeal twisted_cubic() {
  return HomIdeal(4, {P("x0*x2 - x1^2"), P("x1*x3 - x2^2"), P("x0*x3 - x1*x2")});
}

HomIdeal segre_p1_p2() {
  // 2x2 minors of [[x0 x1 x2] [x3 x4 x5]]
  auto y = [](int i) { return MultiPoly::variable(6, i); };
  return HomIdeal(6, {y(0) * y(4) - y(1) * y(3), y(0) * y(5) - y(2) * y(3), y(1) * y(5) - y(2) * y(4)});
}

MultiPoly spoly(const MultiPoly& f, const Monomial& lf, const MultiPoly& g, const Monomial& lg) {
  Monomial l = Monomial::lcm(lf, lg);
  return f.multiply_monomial(l / lf, 1 / f.coefficient(lf)) - g.multiply_monomial(l / lg, 1 / g.coefficient(lg));
}

void expect_groebner(const GroebnerBasis& gb) {
  for (std::size_t i = 0; i < gb.polys.size(); ++i)
    for (std::size_t j = i + 1; j < gb.polys.size(); ++j)
      EXPECT_TRUE(normal_form(spoly(gb.polys[i], gb.leads[i], gb.polys[j], gb.leads[j]), gb).is_zero());
}

}  // namespace

TEST(Groebner, PrincipalIdeal) {
  HomIdeal i(4, {X(0)});
  ASSERT_EQ(i.groebner().polys.size(), 1u);
  EXPECT_EQ(i.groebner().polys[0], X(0));
}

TEST(Groebner, TwistedCubicPassesBuchbergerCriterion) {
  HomIdeal tc = twisted_cubic();
  const auto& gb = tc.groebner();
  EXPECT_EQ(gb.polys.size(), 3u);
  expect_groebner(gb);
}

TEST(Groebner, LexRowReduction) {
  HomIdeal i(4, {X(0) - X(1), X(1) - X(2)});
  auto polys = i.groebner(MonomialOrder::lex(4)).polys;
  ASSERT_EQ(polys.size(), 2u);
  EXPECT_NE(std::find(polys.begin(), polys.end(), X(0) - X(2)), polys.end());
  EXPECT_NE(std::find(polys.begin(), polys.end(), X(1) - X(2)), polys.end());
}

TEST(Groebner, ReducedBasisIgnoresGeneratorOrder) {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    std::vector<MultiPoly> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(fixtures::random_form(rng, 4, 2, 4));
    std::vector<MultiPoly> shuffled{gens[2], gens[0] * Scalar(3), gens[1]};
    EXPECT_EQ(HomIdeal(4, gens).groebner().polys, HomIdeal(4, shuffled).groebner().polys);
  }
}

TEST(Groebner, StepBudgetIsEnforced) {
  std::vector<MultiPoly> gens{P("x0*x1 - x2^2 + x3^2"), P("x1*x3 - x0^2 + x1*x2"), P("x0*x3 - x1^2 + x2*x3")};
  const auto needed = HomIdeal(4, gens).groebner().reductions;
  ASSERT_GT(needed, 2u);
  auto saved = default_step_budget().load();
  default_step_budget() = 2;
  EXPECT_THROW(HomIdeal(4, gens).groebner(), ResourceLimit);
  default_step_budget() = saved;
}

TEST(Eliminate, ConicParametrization) {
  // ring (x0, x1, y0, y1, y2) graded by weights (1, 1, 2, 2, 2)
  auto v = [](int i) { return MultiPoly::variable(5, i); };
  std::vector<MultiPoly> gens{v(2) - v(0) * v(0), v(3) - v(0) * v(1), v(4) - v(1) * v(1)};
  auto out = eliminate(gens, 2, {1, 1, 2, 2, 2});
  ASSERT_EQ(out.size(), 1u);
  auto y = [](int i) { return MultiPoly::variable(3, i); };
  MultiPoly expected = y(0) * y(2) - y(1) * y(1);
  EXPECT_TRUE(out[0] == expected || out[0] == -expected);
}

TEST(Eliminate, NothingDroppedGivesTheBasis) {
  HomIdeal tc = twisted_cubic();
  EXPECT_TRUE(eliminate(tc, 0).same_as(tc));
}

TEST(Eliminate, GraphOfTheIdentity) {
  // (x, y) with y_i - x_i and the twisted cubic in the y variables
  auto v = [](int i) { return MultiPoly::variable(8, i); };
  std::vector<MultiPoly> gens;
  for (int i = 0; i < 4; ++i) gens.push_back(v(4 + i) - v(i));
  HomIdeal tc = twisted_cubic();
  for (const auto& g : tc.generators()) {
    std::vector<MultiPoly> to_y;
    for (int i = 0; i < 4; ++i) to_y.push_back(v(4 + i));
    gens.push_back(substitute(g, to_y));
  }
  HomIdeal out = eliminate(HomIdeal(8, gens), 4);
  EXPECT_TRUE(out.same_as(twisted_cubic()));
}

TEST(Eliminate, ResultLiesInTheIdeal) {
  Rng rng(12);
  for (int t = 0; t < 5; ++t) {
    auto g1 = fixtures::random_form(rng, 4, 2, 4);
    auto g2 = fixtures::random_form(rng, 4, 2, 4);
    HomIdeal i(4, {g1, g2});
    HomIdeal e = eliminate(i, 1);
    for (const auto& g : e.generators()) {
      EXPECT_TRUE(i.contains(substitute(g, {X(1), X(2), X(3)})));
    }
  }
}

TEST(Saturate, PowerOfVariable) {
  HomIdeal i(4, {X(0) * X(0)});
  EXPECT_TRUE(saturate(i, X(0)).is_unit());
}

TEST(Saturate, StripsAFactor) {
  HomIdeal i(4, {X(0) * X(1)});
  EXPECT_TRUE(saturate(i, X(0)).same_as(HomIdeal(4, {X(1)})));
}

TEST(Saturate, EmbeddedJunkOffTheLine) {
  // the line x2 = x3 = 0 with an embedded point at [1,0,0,0]
  HomIdeal line(4, {X(2), X(3)});
  HomIdeal junk(4, {X(2) * X(2), X(2) * X(3), X(3) * X(3), X(1) * X(2), X(1) * X(3)});
  ASSERT_FALSE(junk.same_as(line));
  EXPECT_EQ(dim_degree(junk), (DimDegree{1, 1}));
  EXPECT_TRUE(saturate_linear(junk, X(1)).same_as(line));
  EXPECT_TRUE(saturate(junk, X(1) + X(2)).same_as(line));
}

TEST(DimDegree, Hyperplane) {
  EXPECT_EQ(dim_degree(HomIdeal(4, {X(0)})), (DimDegree{2, 1}));
}

TEST(DimDegree, TwistedCubic) {
  EXPECT_EQ(dim_degree(twisted_cubic()), (DimDegree{1, 3}));
}

TEST(DimDegree, SegreThreefold) {
  EXPECT_EQ(dim_degree(segre_p1_p2()), (DimDegree{3, 3}));
}

TEST(DimDegree, EmptyScheme) {
  EXPECT_EQ(dim_degree(HomIdeal(4, {X(0), X(1), X(2), X(3)})).dim, -1);
}

TEST(DimDegree, InvariantUnderLinearChange) {
  Rng rng(21);
  HomIdeal tc = twisted_cubic();
  for (int t = 0; t < 5; ++t) {
    LinearChange a = LinearChange::random(3, rng);
    std::vector<MultiPoly> moved;
    for (const auto& g : tc.generators()) moved.push_back(a.transform(g));
    EXPECT_EQ(dim_degree(HomIdeal(4, moved)), (DimDegree{1, 3}));
  }
}

TEST(RationalPoints, CoordinatePoint) {
  auto r = rational_points_zero_dim(HomIdeal(4, {X(1), X(2), X(3)}));
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_EQ(r.points[0], (ProjPoint{1, 0, 0, 0}));
  EXPECT_FALSE(r.irrational_remaining);
}

TEST(RationalPoints, TwoRationalPoints) {
  auto r = rational_points_zero_dim(HomIdeal(4, {P("x1^2 - x0^2"), X(2), X(3)}));
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_NE(std::find(r.points.begin(), r.points.end(), ProjPoint{1, 1, 0, 0}), r.points.end());
  EXPECT_NE(std::find(r.points.begin(), r.points.end(), ProjPoint{1, -1, 0, 0}), r.points.end());
  EXPECT_FALSE(r.irrational_remaining);
}

TEST(RationalPoints, IrrationalRemainder) {
  auto r = rational_points_zero_dim(HomIdeal(4, {P("x1^2 - 2*x0^2"), X(2), X(3)}));
  EXPECT_TRUE(r.points.empty());
  EXPECT_TRUE(r.irrational_remaining);
}

TEST(RationalPoints, PositiveDimensionRejected) {
  EXPECT_THROW(rational_points_zero_dim(twisted_cubic()), InvalidInput);
}

TEST(LocalColength, MilnorNumbersOfAn) {
  for (int n = 1; n <= 6; ++n) {
    MultiPoly g = MultiPoly::variable(3, 0).pow(2) + MultiPoly::variable(3, 1).pow(2) +
                  MultiPoly::variable(3, 2).pow(n + 1);
    EXPECT_EQ(milnor_number(g), n);
  }
}

TEST(Membership, AgreesWithLinearAlgebra) {
  Rng rng(2718);
  int members = 0;
  for (int t = 0; t < 20; ++t) {
    auto inst = fixtures::membership_instance(rng);
    HomIdeal i(4, inst.gens);
    for (const auto& f : {inst.member, inst.probe}) {
      bool by_gb = i.contains(f);
      ASSERT_EQ(by_gb, fixtures::member_by_linear_algebra(inst.gens, f));
      members += by_gb;
    }
  }
  EXPECT_GE(members, 20);
}
