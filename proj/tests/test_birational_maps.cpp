#include <gtest/gtest.h>

#include "support.hpp"

using namespace cremona;
using cremona::fixtures::P;
using cremona::fixtures::X;

namespace {

const char* kTypeOne = "x0^2*x1^2 + x0*x1*x2*x3 + x1^4 + x2^4 + x3^4";
const char* kTypeTwo = "x0^2*x1^2 + x0*x2^3 + x1*x3^3 + x1^4 + x2^4";
const char* kLineQuartic = "x0^2*x2*x3 + x1^2*x2^2 + x0*x1*x3^2 + x1^2*x3^2 + 2*x0^2*x2^2";

bool collinear(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
  Matrix m{a.coords(), b.coords(), c.coords()};
  return determinant(m) == 0;
}

}  // namespace

TEST(Image, IdentityMapKeepsTheQuartic) {
  MultiPoly f = P("x0^4 + x1^4 + x2^4 + x3^4");
  RationalMap id(3, {X(0), X(1), X(2), X(3)});
  MapStep s = image(id, HomIdeal(4, {f}), "identity");
  EXPECT_EQ(s.image_dd, (DimDegree{2, 4}));
  EXPECT_TRUE(s.image.same_as(HomIdeal(4, {f})));
}

TEST(Image, VeroneseConic) {
  auto t = [](int i) { return MultiPoly::variable(2, i); };
  RationalMap v(1, {t(0) * t(0), t(0) * t(1), t(1) * t(1)});
  MapStep s = image(v, HomIdeal(2, {}), "veronese");
  EXPECT_EQ(s.image_dd, (DimDegree{1, 2}));
  auto y = [](int i) { return MultiPoly::variable(3, i); };
  EXPECT_TRUE(s.image.same_as(HomIdeal(3, {y(0) * y(2) - y(1) * y(1)})));
}

TEST(Image, SamplePointsLandOnTheImage) {
  Rng rng(9);
  MultiPoly f = P("x3*(x0^3+x1^3+x2^3)+x0^4+x1^4+x2^4");
  RationalMap m = monoid_map(f, ProjPoint{0, 0, 0, 1});
  auto samples = sample_points(f, 6, rng);
  ASSERT_FALSE(samples.empty());
  MapStep s = image(m, HomIdeal(4, {f}), "monoid", samples);
  for (const auto& p : samples) {
    auto q = m.apply(p);
    if (!q) continue;
    for (const auto& g : s.image.generators()) EXPECT_TRUE(vanishes_at(g, *q));
  }
}

TEST(RationalMapTest, CommonFactorIsRemoved) {
  RationalMap m(3, {X(0) * X(1), X(0) * X(2), X(0) * X(3), X(0) * X(0)});
  EXPECT_EQ(m.degree(), 1);
  EXPECT_EQ(m.forms()[0], X(1));
}

TEST(RationalMapTest, RejectsUnequalDegrees) {
  EXPECT_THROW(RationalMap(3, {X(0), X(1) * X(1), X(2), X(3)}), InvalidInput);
}

TEST(MonoidMap, CubicMonoidGoesToAPlane) {
  MultiPoly f = P("x3*(x0^2 + x1^2) + x0^3 + x2^3");
  MapStep s = image(monoid_map(f, ProjPoint{0, 0, 0, 1}), HomIdeal(4, {f}), "monoid");
  EXPECT_EQ(s.image_dd, (DimDegree{2, 1}));
}

TEST(MonoidMap, QuarticMonoidGoesToAPlane) {
  MultiPoly f = P("x3*(x0^3+x1^3+x2^3)+x0^4+x1^4+x2^4");
  MapStep s = image(monoid_map(f, ProjPoint{0, 0, 0, 1}), HomIdeal(4, {f}), "monoid");
  EXPECT_EQ(s.image_dd, (DimDegree{2, 1}));
}

TEST(MonoidMap, NonMonoidRejected) {
  EXPECT_THROW(monoid_map(P("x0^4 + x1^4 + x2^4 + x3^4"), ProjPoint{0, 0, 0, 1}), InvalidInput);
}

TEST(Projection, FromACoordinatePoint) {
  RationalMap pr = projection(ProjPoint{0, 0, 0, 0, 0, 1});
  EXPECT_EQ(pr.target_dim(), 4);
  std::vector<MultiPoly> expected;
  for (int i = 0; i < 5; ++i) expected.push_back(MultiPoly::variable(6, i));
  EXPECT_EQ(span_basis(pr.forms()).size(), 5u);
  auto all = pr.forms();
  all.insert(all.end(), expected.begin(), expected.end());
  EXPECT_EQ(span_basis(all).size(), 5u);
}

TEST(Projection, ConicFromOneOfItsPoints) {
  auto y = [](int i) { return MultiPoly::variable(3, i); };
  HomIdeal conic(3, {y(0) * y(2) - y(1) * y(1)});
  MapStep s = image(projection(ProjPoint{1, 0, 0}), conic, "projection");
  EXPECT_EQ(s.image_dd, (DimDegree{1, 1}));
}

TEST(QuadricsThroughLine, SixIndependentQuadrics) {
  RationalMap q = quadrics_through_line(HomIdeal(4, {X(2), X(3)}), ProjPoint{1, 2, 3, 5});
  EXPECT_EQ(q.forms().size(), 6u);
  EXPECT_EQ(span_basis(q.forms()).size(), 6u);
  for (const auto& f : q.forms()) EXPECT_EQ(f.evaluate(std::vector<Scalar>{1, 2, 3, 5}), 0);
}

TEST(QuadricsThroughLine, ImageOfSpaceIsTheSegreThreefold) {
  RationalMap q = quadrics_through_line(HomIdeal(4, {X(2), X(3)}), ProjPoint{1, 2, 3, 5});
  MapStep s = image(q, HomIdeal(4, {}), "quadrics");
  EXPECT_EQ(s.image_dd, (DimDegree{3, 3}));
}

TEST(QuadricsThroughLine, QuarticSingularAlongTheLineGoesToDegreeSeven) {
  MultiPoly f = P(kLineQuartic);
  Rng rng(4);
  auto pts = sample_points(f, 20, rng);
  std::optional<ProjPoint> x;
  for (const auto& p : pts)
    if (!(p[2] == 0 && p[3] == 0)) {
      x = p;
      break;
    }
  ASSERT_TRUE(x.has_value());
  RationalMap q = quadrics_through_line(HomIdeal(4, {X(2), X(3)}), *x);
  MapStep s = image(q, HomIdeal(4, {f}), "quadrics");
  EXPECT_EQ(s.image_dd, (DimDegree{2, 7}));
}

TEST(QuadricsThroughLine, PointOnTheLineRejected) {
  EXPECT_THROW(quadrics_through_line(HomIdeal(4, {X(2), X(3)}), ProjPoint{1, 1, 0, 0}), InvalidInput);
}

TEST(LambdaMap, TypeOneBookkeeping) {
  MultiPoly f = P(kTypeOne);
  RationalMap lam = lambda_map(f, 1);
  EXPECT_EQ(lam.target_dim(), 6);
  EXPECT_EQ(image(lam, HomIdeal(4, {}), "X1").image_dd, (DimDegree{3, 4}));
  EXPECT_EQ(image(lam, HomIdeal(4, {f}), "S1").image_dd, (DimDegree{2, 8}));
}

TEST(LambdaMap, TypeTwoTargetAndThreefold) {
  MultiPoly f = P(kTypeTwo);
  RationalMap lam = lambda_map(f, 2);
  EXPECT_EQ(lam.target_dim(), 5);
  EXPECT_EQ(image(lam, HomIdeal(4, {}), "X2").image_dd, (DimDegree{3, 3}));
}

TEST(LambdaMap, TypeMismatchRejected) {
  EXPECT_THROW(lambda_map(P(kTypeTwo), 1), InvalidInput);
  EXPECT_THROW(lambda_map(P(kTypeOne), 2), InvalidInput);
}

TEST(CubicInvolution, ThirdPointOnAPlaneCubic) {
  auto y = [](int i) { return MultiPoly::variable(3, i); };
  MultiPoly t = y(1) * y(1) * y(2) - y(0) * y(0) * (y(0) + y(2));
  ProjPoint p{-1, 0, 1};
  RationalMap tau = cubic_involution(t, p);
  Rng rng(2);
  int checked = 0;
  for (const auto& q : sample_points(t, 8, rng)) {
    if (q == p) continue;
    auto r = tau.apply(q);
    if (!r) continue;
    EXPECT_TRUE(vanishes_at(t, *r));
    EXPECT_TRUE(collinear(p, q, *r));
    ++checked;
  }
  EXPECT_GE(checked, 3);
  EXPECT_FALSE(tau.apply(p).has_value());
}

TEST(CubicInvolution, InvolutionOnACubicSurface) {
  MultiPoly t = P("x0^3 + x1^3 + x2^3 + x3^3");
  ProjPoint p{1, -1, 0, 0};
  RationalMap tau = cubic_involution(t, p);
  Rng rng(25);
  int fixed = 0;
  for (const auto& q : sample_points(t, 40, rng)) {
    auto r = tau.apply(q);
    if (!r) continue;
    auto back = tau.apply(*r);
    if (!back) continue;
    EXPECT_EQ(*back, q);
    ++fixed;
  }
  EXPECT_GE(fixed, 10);
}

TEST(CubicInvolution, SingularCenterRejected) {
  auto y = [](int i) { return MultiPoly::variable(3, i); };
  MultiPoly t = y(1) * y(1) * y(2) - y(0) * y(0) * (y(0) + y(2));
  EXPECT_THROW(cubic_involution(t, ProjPoint{0, 0, 1}), InvalidInput);
}

TEST(CubicStabilizer, NodalPlaneCubic) {
  auto y = [](int i) { return MultiPoly::variable(3, i); };
  MultiPoly x = y(1) * y(1) * y(2) - y(0) * y(0) * (y(0) + y(2));
  Rng rng(4);
  Stabilizer s = verify_cubic_stabilizer(x, y(0) * y(0) + y(1) * y(2) + y(2) * y(2) * 3, ProjPoint{-1, 0, 1}, rng);
  EXPECT_TRUE(s.preserves_x);
  EXPECT_GE(s.moved_off_x, 1);
}

TEST(CubicStabilizer, FermatCubicSurface) {
  MultiPoly x = P("x0^3 + x1^3 + x2^3 + x3^3");
  Rng rng(4);
  Stabilizer s = verify_cubic_stabilizer(x, P("x0*x1 + x2^2 - x3^2 + x1*x3"), ProjPoint{1, -1, 0, 0}, rng);
  EXPECT_TRUE(s.preserves_x);
  EXPECT_GE(s.moved_off_x, 1);
}

TEST(CubicStabilizer, SquareIsIdentityOnX) {
  auto y = [](int i) { return MultiPoly::variable(3, i); };
  MultiPoly x = y(1) * y(1) * y(2) - y(0) * y(0) * (y(0) + y(2));
  RationalMap omega = cubic_stabilizer_map(x, y(0) * y(0) + y(1) * y(2) + y(2) * y(2) * 3, ProjPoint{-1, 0, 1});
  Rng rng(10);
  int checked = 0;
  for (const auto& q : sample_points(x, 10, rng)) {
    auto r = omega.apply(q);
    if (!r) continue;
    auto back = omega.apply(*r);
    if (!back) continue;
    EXPECT_EQ(*back, q);
    ++checked;
  }
  EXPECT_GE(checked, 3);
}

TEST(CubicStabilizer, ProjectionUndoesTheSection) {
  MultiPoly f3 = P("x0^3 + x1^3 + x2^3 + x3^3");
  MultiPoly q = P("x0*x1 + x2^2");
  RationalMap sigma = cubic_section(f3, q);
  std::vector<MultiPoly> drop;
  for (int i = 0; i < 4; ++i) drop.push_back(MultiPoly::variable(5, i));
  RationalMap back = sigma.then(RationalMap(4, drop));
  ASSERT_EQ(back.degree(), 1);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(back.forms()[i], X(i) * back.forms()[0].leading_coefficient());
}
