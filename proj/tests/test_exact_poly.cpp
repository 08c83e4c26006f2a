#include <gtest/gtest.h>

#include "support.hpp"

using namespace cremona;
using cremona::fixtures::P;
using cremona::fixtures::X;

TEST(Scalar, FractionsAreReduced) {
  Scalar a(6, 4);
  a.canonicalize();
  EXPECT_EQ(a.get_num(), 3);
  EXPECT_EQ(a.get_den(), 2);
  Scalar b = Scalar(1, 3) + Scalar(1, 6);
  EXPECT_EQ(b, Scalar(1, 2));
  EXPECT_GT(Scalar(-2, 4).get_den(), 0);
}

TEST(PolyArith, Cancellation) {
  EXPECT_EQ((X(0) + X(1)) + (-X(1)), X(0));
}

TEST(PolyArith, ZeroAbsorbs) {
  EXPECT_TRUE((X(0) * MultiPoly(4)).is_zero());
}

TEST(PolyArith, DifferenceOfSquares) {
  EXPECT_EQ((X(0) + X(1)) * (X(0) - X(1)), X(0) * X(0) - X(1) * X(1));
}

TEST(PolyArith, ArityMismatchThrows) {
  EXPECT_THROW(X(0, 3) + X(0, 4), InvalidInput);
}

TEST(PolyArith, NoStoredZeroCoefficients) {
  MultiPoly f = X(0) * X(1) + X(2) - X(0) * X(1);
  for (const auto& [m, c] : f.terms()) EXPECT_NE(c, 0);
  EXPECT_EQ(f, X(2));
}

TEST(Substitute, IdentityLeavesFormUnchanged) {
  MultiPoly f = X(0) * X(0);
  EXPECT_EQ(substitute(f, {X(0), X(1), X(2), X(3)}), f);
}

TEST(Substitute, SwapKeepsSymmetricForm) {
  MultiPoly f = X(0) * X(1);
  EXPECT_EQ(substitute(f, {X(1), X(0), X(2), X(3)}), f);
}

TEST(Substitute, HandExpansion) {
  MultiPoly f = X(0) * X(0) + X(1) * X(1);
  MultiPoly g = substitute(f, {X(0) + X(1), X(1), X(2), X(3)});
  EXPECT_EQ(g, P("x0^2 + 2*x0*x1 + 2*x1^2"));
}

TEST(Substitute, ArityMismatchThrows) {
  EXPECT_THROW(substitute(X(0), {X(0)}), InvalidInput);
}

TEST(Partials, Fermat) {
  auto d = partials(P("x0^4+x1^4+x2^4+x3^4"));
  ASSERT_EQ(d.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(d[i], X(i).pow(3) * Scalar(4));
}

TEST(Partials, ConstantHasZeroGradient) {
  for (const auto& d : partials(MultiPoly::constant(4, 7))) EXPECT_TRUE(d.is_zero());
}

TEST(Partials, TypeOneNormalForm) {
  auto d = partials(P("x0^2*x1^2 + x0*x1*x2*x3 + x2^4"));
  EXPECT_EQ(d[0], P("2*x0*x1^2 + x1*x2*x3"));
  EXPECT_EQ(d[1], P("2*x0^2*x1 + x0*x2*x3"));
  EXPECT_EQ(d[2], P("x0*x1*x3 + 4*x2^3"));
  EXPECT_EQ(d[3], P("x0*x1*x2"));
}

TEST(Multiplicity, PointOffTheSurface) {
  EXPECT_EQ(multiplicity_at(P("x0^4+x1^4+x2^4+x3^4"), ProjPoint{1, 0, 0, 0}), 0);
}

TEST(Multiplicity, MonoidPoint) {
  EXPECT_EQ(multiplicity_at(P("x3*(x0^3+x1^3+x2^3)+x0^4+x1^4+x2^4"), ProjPoint{0, 0, 0, 1}), 3);
}

TEST(Multiplicity, TypeOnePointIsDouble) {
  EXPECT_EQ(multiplicity_at(P("x0^2*x1^2+x0*x1*x2*x3+x1^4+x2^4+x3^4"), ProjPoint{1, 0, 0, 0}), 2);
}

TEST(Multiplicity, InvariantUnderChangesFixingThePoint) {
  Rng rng(17);
  MultiPoly f = P("x3*(x0^3+x1^3+x2^3)+x0^4+x1^4+x2^4");
  ProjPoint p{0, 0, 0, 1};
  for (int i = 0; i < 10; ++i) {
    LinearChange a = LinearChange::random_fixing(p, rng);
    EXPECT_EQ(a.apply(p), p);
    EXPECT_EQ(multiplicity_at(a.transform(f), p), 3);
  }
}

TEST(ProjPointTest, CanonicalScaling) {
  ProjPoint p(std::vector<Scalar>{0, 3, 6, -9});
  EXPECT_EQ(p, (ProjPoint{0, 1, 2, -3}));
  EXPECT_THROW(ProjPoint({0, 0, 0}), InvalidInput);
}

TEST(LinearChangeTest, MovesTheZeroSet) {
  Rng rng(3);
  MultiPoly f = P("x0*x1 - x2*x3");
  ProjPoint p{1, 0, 1, 0};
  ASSERT_TRUE(vanishes_at(f, p));
  for (int i = 0; i < 5; ++i) {
    LinearChange a = LinearChange::random(3, rng);
    EXPECT_TRUE(vanishes_at(a.transform(f), a.apply(p)));
    EXPECT_EQ(a.inverse().transform(a.transform(f)), f);
  }
}

TEST(RingAxioms, RandomTriples) {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    MultiPoly a = fixtures::random_poly(rng, 3, 2, 3);
    MultiPoly b = fixtures::random_poly(rng, 3, 2, 3);
    MultiPoly c = fixtures::random_poly(rng, 3, 2, 3);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_TRUE((a - a).is_zero());
  }
}

TEST(EulerRelation, RandomForms) {
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const int d = static_cast<int>(rng.uniform(1, 5));
    MultiPoly f = fixtures::random_form(rng, 4, d, 6);
    auto g = partials(f);
    MultiPoly lhs(4);
    for (int j = 0; j < 4; ++j) lhs += X(j) * g[j];
    ASSERT_EQ(lhs, f * Scalar(d));
  }
}

TEST(Parser, DirectTranscription) {
  MultiPoly f = parse_polynomial("x0^2*x1^2 + x2^4 + x3^4", 4);
  EXPECT_EQ(f, X(0).pow(2) * X(1).pow(2) + X(2).pow(4) + X(3).pow(4));
}

TEST(Parser, Aliases) {
  EXPECT_EQ(parse_polynomial("x^4+y^4+z^4+w^4", 4), P("x0^4+x1^4+x2^4+x3^4"));
}

TEST(Parser, NormalFormWithParentheses) {
  MultiPoly f = parse_polynomial("x0^2*x1^2 + x0*x1*(x2*x3) + x1^4 + x2^4 + x3^4", 4);
  EXPECT_EQ(f.size(), 5u);
  EXPECT_TRUE(f.is_homogeneous());
  EXPECT_EQ(f.total_degree(), 4);
}

TEST(Parser, RationalLiterals) {
  EXPECT_EQ(parse_polynomial("1/2*x0 - x1/3", 4), X(0) * Scalar(1, 2) - X(1) * Scalar(1, 3));
}

TEST(Parser, ErrorsCarryLineAndColumn) {
  try {
    parse_polynomial("x0 +\n  x1 * )", 4);
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 8);
  }
  EXPECT_THROW(parse_polynomial("x7", 4), ParseError);
  EXPECT_THROW(parse_polynomial("x0 / x1", 4), ParseError);
  EXPECT_THROW(parse_polynomial("", 4), ParseError);
  EXPECT_THROW(parse_polynomial("x0^-1", 4), ParseError);
}

TEST(Parser, FormChecks) {
  EXPECT_THROW(parse_form("x0^2 + x1", 4), InvalidInput);
  EXPECT_THROW(parse_form("x0 - x0", 4), InvalidInput);
}

TEST(Parser, RoundTripThroughPrinter) {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    MultiPoly f = fixtures::random_poly(rng, 4, 4, 5, 7) * Scalar(1, static_cast<long>(rng.uniform(1, 5)));
    MultiPoly once = parse_polynomial(f.to_string(), 4);
    ASSERT_EQ(once, f) << f.to_string();
    ASSERT_EQ(parse_polynomial(once.to_string(), 4), once);
  }
}

TEST(Univariate, RationalRoots) {
  UPoly f(std::vector<Scalar>{-2, 0, 1});  // t^2 - 2
  EXPECT_TRUE(rational_roots(f).empty());
  UPoly g(std::vector<Scalar>{-1, 0, 4});  // 4 t^2 - 1
  auto r = rational_roots(g);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0] * r[1], Scalar(-1, 4));
}
