#pragma once

// Singular loci of surfaces in P^3, classification of isolated double
// points, cone detection and the birational type of quartics.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "cremona/ideal.hpp"
#include "cremona/linalg.hpp"
#include "cremona/plane_curves.hpp"
#include "cremona/projective.hpp"
#include "cremona/univariate.hpp"

namespace cremona {

enum class SingClass {
  kA,
  kD,
  kE,
  kSimpleElliptic,
  kType1,
  kType2,
  kGenus2OrWorse,
  kTriplePoint,
  kConeVertex,
  kUnclassified,
};

enum class PointVerdict { kRationalDP, kElliptic, kGenus2, kIrrationalUnresolved };

inline std::string verdict_name(PointVerdict v) {
  switch (v) {
    case PointVerdict::kRationalDP: return "RATIONAL_DP";
    case PointVerdict::kElliptic: return "ELLIPTIC";
    case PointVerdict::kGenus2: return "GENUS2";
    case PointVerdict::kIrrationalUnresolved: return "IRRATIONAL_UNRESOLVED";
  }
  return "?";
}

struct SingularPointReport {
  ProjPoint point;
  int multiplicity = 0;
  int rank = 0;
  SingClass cls = SingClass::kUnclassified;
  int index = 0;  // n of A(n), D(n), E(n)
  std::optional<long> milnor;
  PointVerdict verdict = PointVerdict::kIrrationalUnresolved;

  int corank() const { return 3 - rank; }

  std::string tag() const {
    switch (cls) {
      case SingClass::kA: return "A(" + std::to_string(index) + ")";
      case SingClass::kD: return "D(" + std::to_string(index) + ")";
      case SingClass::kE: return "E(" + std::to_string(index) + ")";
      case SingClass::kSimpleElliptic: return "SIMPLE_ELLIPTIC";
      case SingClass::kType1: return "TYPE1_INF_NEAR_DOUBLE_LINE";
      case SingClass::kType2: return "TYPE2_TACHNODE_INF_NEAR_DOUBLE_LINE";
      case SingClass::kGenus2OrWorse: return "GENUS2_OR_WORSE";
      case SingClass::kTriplePoint: return "TRIPLE_POINT";
      case SingClass::kConeVertex: return "CONE_VERTEX";
      case SingClass::kUnclassified: return "UNCLASSIFIED";
    }
    return "?";
  }
};

namespace detail {

inline PointVerdict verdict_for(SingClass c) {
  switch (c) {
    case SingClass::kA:
    case SingClass::kD:
    case SingClass::kE: return PointVerdict::kRationalDP;
    case SingClass::kSimpleElliptic:
    case SingClass::kType1:
    case SingClass::kType2: return PointVerdict::kElliptic;
    case SingClass::kGenus2OrWorse: return PointVerdict::kGenus2;
    default: return PointVerdict::kIrrationalUnresolved;
  }
}

/// Multiplicities (over the algebraic closure) of the distinct roots of a
/// binary form in variables a, b of a polynomial ring; empty for the zero form.
inline std::vector<int> binary_root_multiplicities(const MultiPoly& form, int a, int b) {
  std::vector<int> out;
  if (form.is_zero()) return out;
  const int n = form.nvars();
  const int d = form.total_degree();
  std::vector<MultiPoly> images(n, MultiPoly(1));
  images[a] = MultiPoly::constant(1, 1);
  images[b] = MultiPoly::variable(1, 0);
  UPoly u = UPoly::from_multipoly(substitute(form, images), 0);
  if (u.degree() < d) out.push_back(d - u.degree());
  for (const auto& [mult, factor] : squarefree_decomposition(u))
    for (int i = 0; i < factor.degree(); ++i) out.push_back(mult);
  std::sort(out.rbegin(), out.rend());
  return out;
}

inline Matrix hessian(const MultiPoly& quadratic) {
  const int n = quadratic.nvars();
  Matrix h(n, std::vector<Scalar>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MultiPoly d = derivative(derivative(quadratic, i), j);
      h[i][j] = d.is_zero() ? Scalar(0) : d.terms().front().second;
    }
  return h;
}

/// Splitting lemma up to degree `order`: for g = c*u^2 + (order >= 3) in
/// variables (u, v, w) with u = variable 0, returns h(v, w) with
/// g ~ c*u^2 + h, computed by solving dg/du = 0 for u.
inline MultiPoly split_off_square(const MultiPoly& g, const Scalar& c, int order) {
  const int n = g.nvars();
  MultiPoly u = MultiPoly::variable(n, 0);
  MultiPoly rest = g - c * u * u;
  MultiPoly du = derivative(rest, 0);
  MultiPoly phi(n);
  auto at = [&](const MultiPoly& f, const MultiPoly& value) {
    std::vector<MultiPoly> images;
    for (int i = 0; i < n; ++i) images.push_back(i == 0 ? value : MultiPoly::variable(n, i));
    return substitute(f, images);
  };
  for (int it = 0; it < order; ++it)
    phi = (at(du, phi) * Scalar(Scalar(-1) / (2 * c))).truncated(order + 1);
  return at(g, phi).truncated(order + 1);
}

inline MultiPoly linear_substitute(const MultiPoly& g, const Matrix& columns) {
  // old variable i = sum_j columns[j][i] * new variable j
  const int n = g.nvars();
  std::vector<MultiPoly> images;
  for (int i = 0; i < n; ++i) {
    MultiPoly img(n);
    for (int j = 0; j < n; ++j)
      if (columns[j][i] != 0) img += MultiPoly::variable(n, j) * columns[j][i];
    images.push_back(img);
  }
  return substitute(g, images);
}

}  // namespace detail

/// Milnor number of an isolated singularity given by a local equation,
/// or nullopt when it has not stabilised by the truncation bound.
inline std::optional<long> milnor_number(const MultiPoly& local, int truncation = 12) {
  std::vector<MultiPoly> j;
  for (const auto& p : partials(local))
    if (!p.is_zero()) j.push_back(p);
  if (j.empty()) return std::nullopt;
  return local_colength(j, truncation);
}

inline std::optional<long> tjurina_number(const MultiPoly& local, int truncation = 12) {
  std::vector<MultiPoly> j{local};
  for (const auto& p : partials(local))
    if (!p.is_zero()) j.push_back(p);
  return local_colength(j, truncation);
}

/// Strict transform of a local equation under the blow-up of the origin,
/// in the chart where variable `chart` generates the exceptional divisor.
inline MultiPoly blow_up_chart(const MultiPoly& local, int chart) {
  if (local.is_zero()) throw InvalidInput("blow_up_chart: zero input");
  const int n = local.nvars();
  if (chart < 0 || chart >= n) throw InvalidInput("blow_up_chart: bad chart index");
  std::vector<MultiPoly> images;
  MultiPoly e = MultiPoly::variable(n, chart);
  for (int i = 0; i < n; ++i) images.push_back(i == chart ? e : e * MultiPoly::variable(n, i));
  MultiPoly t = substitute(local, images);
  Monomial content = monomial_content(t);
  return divide_by_monomial(t, Monomial::variable(chart, content.exp[chart]));
}

/// Classification of a double point (or worse) p of the surface F = 0.
inline SingularPointReport classify_point(const MultiPoly& f, const ProjPoint& p,
                                          int truncation = 12) {
  SingularPointReport r;
  r.point = p;
  MultiPoly g = local_expansion(f, p);
  r.multiplicity = g.min_degree();
  if (r.multiplicity < 2) throw InvalidInput("classify_point: " + p.to_string() + " is not singular");
  const int d = f.total_degree();
  MultiPoly q = g.homogeneous_part(2);
  r.rank = r.multiplicity == 2 ? rank(detail::hessian(q)) : 0;
  auto finish = [&](SingClass c, int index = 0) {
    r.cls = c;
    r.index = index;
    r.verdict = detail::verdict_for(c);
    return r;
  };
  if (r.multiplicity == d) return finish(SingClass::kConeVertex);
  if (r.multiplicity >= 3) return finish(SingClass::kTriplePoint);

  r.milnor = milnor_number(g, truncation);
  if (!r.milnor) return finish(SingClass::kUnclassified);
  const long mu = *r.milnor;
  if (r.rank == 3) return mu == 1 ? finish(SingClass::kA, 1) : finish(SingClass::kUnclassified);
  if (r.rank == 2) return finish(SingClass::kA, static_cast<int>(mu));

  // corank 2: move to coordinates (u, v, w) with quadratic part c*u^2
  Matrix h = detail::hessian(q);
  auto ker = kernel(h, 3);
  std::vector<Scalar> a(3, 0);
  for (int i = 0; i < 3; ++i)
    if (std::any_of(h[i].begin(), h[i].end(), [](const Scalar& s) { return s != 0; })) {
      a[i] = 1;
      break;
    }
  Matrix cols{a, ker[0], ker[1]};
  MultiPoly gl = detail::linear_substitute(g, cols);
  Scalar c = gl.homogeneous_part(2).coefficient(Monomial::variable(0, 2));
  MultiPoly f3 = gl.homogeneous_part(3);
  const int n = 3;
  std::vector<MultiPoly> kill_u{MultiPoly(n), MultiPoly::variable(n, 1), MultiPoly::variable(n, 2)};
  MultiPoly cubic = substitute(f3, kill_u);

  if (!cubic.is_zero()) {
    auto mults = detail::binary_root_multiplicities(cubic, 1, 2);
    if (mults[0] == 1) return mu == 4 ? finish(SingClass::kD, 4) : finish(SingClass::kUnclassified);
    if (mults[0] == 2) return mu >= 5 ? finish(SingClass::kD, static_cast<int>(mu)) : finish(SingClass::kUnclassified);
    if (mu >= 6 && mu <= 8) return finish(SingClass::kE, static_cast<int>(mu));
    // the cube l^3: rotate (v, w) so that l = v, then read the quasi-homogeneous
    // part of weight 6 for weights (v, w) = (2, 1)
    MultiPoly split = detail::split_off_square(gl, c, 6);
    std::vector<MultiPoly> images{MultiPoly(n), MultiPoly::variable(n, 1), MultiPoly::variable(n, 2)};
    UPoly affine = UPoly::from_multipoly(
        substitute(cubic, {MultiPoly(1), MultiPoly::constant(1, 1), MultiPoly::variable(1, 0)}), 0);
    if (affine.degree() == 3) {
      Scalar root = -affine.coeffs()[2] / (3 * affine.coeffs()[3]);
      // cubic = lambda (w - root v)^3; new v' = w - root v, w' = v
      images[1] = MultiPoly::variable(n, 2);
      images[2] = MultiPoly::variable(n, 1) + MultiPoly::variable(n, 2) * root;
    }
    MultiPoly hv = substitute(split, images);
    auto coeff = [&](int ev, int ew) {
      Monomial m;
      m.exp[1] = static_cast<std::uint16_t>(ev);
      m.exp[2] = static_cast<std::uint16_t>(ew);
      return hv.coefficient(m);
    };
    if (coeff(0, 4) != 0 || coeff(1, 3) != 0 || coeff(0, 5) != 0) return finish(SingClass::kUnclassified);
    // weighted cubic in (v, w^2)
    MultiPoly weighted = MultiPoly::from_terms(
        3, {{Monomial::variable(1, 3), coeff(3, 0)},
            {Monomial::variable(1, 2) * Monomial::variable(2, 1), coeff(2, 2)},
            {Monomial::variable(1, 1) * Monomial::variable(2, 2), coeff(1, 4)},
            {Monomial::variable(2, 3), coeff(0, 6)}});
    auto wm = detail::binary_root_multiplicities(weighted, 1, 2);
    if (wm[0] == 1) return mu == 10 ? finish(SingClass::kType2) : finish(SingClass::kUnclassified);
    if (wm[0] == 2) return mu > 10 ? finish(SingClass::kType2) : finish(SingClass::kUnclassified);
    return finish(SingClass::kGenus2OrWorse);
  }

  // kernel cubic vanishes: f3 = u*Q(v,w) + u^2*(...)
  MultiPoly quad_q = substitute(derivative(f3, 0), kill_u);
  MultiPoly split = detail::split_off_square(gl, c, 4);
  MultiPoly r4 = split.homogeneous_part(4);
  auto mults = detail::binary_root_multiplicities(r4, 1, 2);
  if (mults.empty() || r4.total_degree() != 4) return finish(SingClass::kGenus2OrWorse);
  if (mults[0] == 1) {
    if (mu != 9) return finish(SingClass::kUnclassified);
    return finish(quad_q.is_zero() ? SingClass::kSimpleElliptic : SingClass::kType1);
  }
  if (mults[0] == 2) return mu > 9 ? finish(SingClass::kType1) : finish(SingClass::kUnclassified);
  return finish(SingClass::kGenus2OrWorse);
}

// ---------------------------------------------------------------------------
// Singular locus

enum class ComponentKind { kLine, kOther };

struct LocusComponent {
  ComponentKind kind = ComponentKind::kOther;
  HomIdeal ideal;
  long degree = 0;
  std::vector<ProjPoint> spanning;  // two points on a line
};

struct SingularLocus {
  HomIdeal ideal;
  DimDegree dd;
  std::vector<LocusComponent> components;  // one-dimensional part
  std::vector<ProjPoint> points;           // rational isolated points
  long unaccounted_degree = 0;             // degree of curves not identified as lines
};

namespace detail {

inline HomIdeal line_through(const ProjPoint& a, const ProjPoint& b) {
  Matrix m{a.coords(), b.coords()};
  auto ker = kernel(m, a.dim() + 1);
  std::vector<MultiPoly> gens;
  for (const auto& v : ker) {
    std::vector<MultiPoly::Term> terms;
    for (int i = 0; i <= a.dim(); ++i)
      if (v[i] != 0) terms.emplace_back(Monomial::variable(i), v[i]);
    gens.push_back(MultiPoly::from_terms(a.dim() + 1, std::move(terms)));
  }
  return HomIdeal(a.dim() + 1, gens);
}

inline bool line_inside(const std::vector<MultiPoly>& gens, const ProjPoint& a, const ProjPoint& b) {
  const int n = a.dim() + 1;
  std::vector<MultiPoly> images;
  for (int i = 0; i < n; ++i)
    images.push_back(MultiPoly::variable(2, 0) * a[i] + MultiPoly::variable(2, 1) * b[i]);
  for (const auto& g : gens)
    if (!substitute(g, images).is_zero()) return false;
  return true;
}

inline MultiPoly random_linear_form(int nvars, Rng& rng) {
  for (;;) {
    std::vector<MultiPoly::Term> t;
    for (int i = 0; i < nvars; ++i) t.emplace_back(Monomial::variable(i), rng.small_scalar(4));
    MultiPoly l = MultiPoly::from_terms(nvars, std::move(t));
    if (!l.is_zero()) return l;
  }
}

inline std::vector<ProjPoint> rational_points_on_section(const HomIdeal& locus, const MultiPoly& plane) {
  return rational_points_zero_dim(locus.plus({plane})).points;
}

}  // namespace detail

inline SingularLocus singular_locus(const MultiPoly& f, std::uint64_t seed = 5) {
  if (!f.is_homogeneous() || f.is_zero()) throw InvalidInput("singular_locus: nonzero form expected");
  SingularLocus s;
  std::vector<MultiPoly> gens{f};
  for (const auto& p : partials(f))
    if (!p.is_zero()) gens.push_back(p);
  s.ideal = HomIdeal(f.nvars(), gens);
  s.dd = dim_degree(s.ideal);
  if (s.dd.dim >= f.nvars() - 2) throw InvalidInput("input is not squarefree");
  if (s.dd.dim == 1) {
    Rng rng(seed);
    std::vector<ProjPoint> first, second;
    for (int attempt = 0; attempt < 4 && (first.empty() || second.empty()); ++attempt) {
      MultiPoly h1 = detail::random_linear_form(f.nvars(), rng);
      MultiPoly h2 = detail::random_linear_form(f.nvars(), rng);
      if (dim_degree(s.ideal.plus({h1})).dim != 0 || dim_degree(s.ideal.plus({h2})).dim != 0) continue;
      first = detail::rational_points_on_section(s.ideal, h1);
      second = detail::rational_points_on_section(s.ideal, h2);
    }
    long line_degree = 0;
    for (const auto& a : first)
      for (const auto& b : second) {
        if (a == b || !detail::line_inside(gens, a, b)) continue;
        HomIdeal line = detail::line_through(a, b);
        bool seen = false;
        for (const auto& c : s.components)
          if (c.ideal.same_as(line)) seen = true;
        if (seen) continue;
        s.components.push_back({ComponentKind::kLine, line, 1, {a, b}});
        ++line_degree;
      }
    s.unaccounted_degree = s.dd.degree - line_degree;
    if (s.unaccounted_degree > 0)
      s.components.push_back({ComponentKind::kOther, s.ideal, s.unaccounted_degree, {}});
  } else if (s.dd.dim == 0) {
    RationalPoints pts = rational_points_zero_dim(s.ideal);
    s.points = pts.points;
    long total = 0;
    for (const auto& p : s.points) {
      auto tau = tjurina_number(local_expansion(f, p), 24);
      if (!tau) throw Undetermined("local Tjurina number did not stabilise at " + p.to_string());
      total += *tau;
    }
    s.unaccounted_degree = s.dd.degree - total;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Cones

/// The vertex of a cone: the unique point where all partials of order
/// deg F - 1 vanish.
inline std::optional<ProjPoint> detect_cone(const MultiPoly& f) {
  const int n = f.nvars();
  const int d = f.total_degree();
  if (d < 2) return std::nullopt;
  std::vector<MultiPoly> frontier{f};
  for (int k = 0; k < d - 1; ++k) {
    std::vector<MultiPoly> next;
    for (const auto& g : frontier)
      for (const auto& p : partials(g))
        if (!p.is_zero()) next.push_back(p);
    frontier = span_basis(next);
  }
  Matrix m;
  for (const auto& l : frontier) {
    std::vector<Scalar> row(n, 0);
    for (const auto& [mon, c] : l.terms())
      for (int i = 0; i < n; ++i)
        if (mon.exp[i]) row[i] = c;
    m.push_back(row);
  }
  auto ker = m.empty() ? kernel(Matrix{std::vector<Scalar>(n, 0)}, n) : kernel(m, n);
  if (ker.empty()) return std::nullopt;
  if (ker.size() >= 2) throw InvalidInput("form depends on too few variables (a union of hyperplanes)");
  return ProjPoint(ker[0]);
}

/// The base curve of a cone, as a form in n-1 variables, after moving the
/// vertex to e0.
inline MultiPoly cone_base(const MultiPoly& f, const ProjPoint& vertex) {
  LinearChange ch = LinearChange::sending_to_coordinate_point(vertex, 0);
  MultiPoly g = ch.transform(f);
  if (g.degree_in(0) != 0) throw InvalidInput("cone_base: vertex is not a cone point");
  std::vector<MultiPoly> images{MultiPoly(f.nvars() - 1)};
  for (int i = 1; i < f.nvars(); ++i) images.push_back(MultiPoly::variable(f.nvars() - 1, i - 1));
  return substitute(g, images);
}

// ---------------------------------------------------------------------------
// Birational type

enum class BirationalType {
  kRational,
  kK3,
  kEllipticRuled,
  kGenus3RuledCone,
  kHigherGenusCone,
  kUndetermined,
};

inline std::string birational_type_name(BirationalType t) {
  switch (t) {
    case BirationalType::kRational: return "RATIONAL";
    case BirationalType::kK3: return "K3";
    case BirationalType::kEllipticRuled: return "ELLIPTIC_RULED";
    case BirationalType::kGenus3RuledCone: return "GENUS3_RULED_CONE";
    case BirationalType::kHigherGenusCone: return "HIGHER_GENUS_CONE";
    case BirationalType::kUndetermined: return "UNDETERMINED";
  }
  return "?";
}

struct SurfaceAnalysis {
  MultiPoly form;
  bool squarefree = true;
  SingularLocus locus;
  std::vector<SingularPointReport> reports;
  std::optional<ProjPoint> cone_vertex;
  std::optional<long> cone_genus;
  BirationalType type = BirationalType::kUndetermined;
  std::vector<std::string> caveats;

  bool normal() const { return locus.dd.dim <= 0; }
  int count(PointVerdict v) const {
    return static_cast<int>(std::count_if(reports.begin(), reports.end(),
                                          [&](const auto& r) { return r.verdict == v; }));
  }
};

inline BirationalType birational_type(SurfaceAnalysis& a) {
  const int d = a.form.total_degree();
  if (a.cone_vertex) {
    if (!a.cone_genus) return a.type = BirationalType::kUndetermined;
    long g = *a.cone_genus;
    if (g == 0) return a.type = BirationalType::kRational;
    if (g == 1) return a.type = BirationalType::kEllipticRuled;
    return a.type = g == 3 ? BirationalType::kGenus3RuledCone : BirationalType::kHigherGenusCone;
  }
  if (d <= 3) return a.type = BirationalType::kRational;
  if (d != 4 || !a.normal()) return a.type = BirationalType::kUndetermined;
  int rdp = a.count(PointVerdict::kRationalDP);
  int ell = a.count(PointVerdict::kElliptic);
  int g2 = a.count(PointVerdict::kGenus2);
  int other = static_cast<int>(a.reports.size()) - rdp - ell - g2;
  if (other > 0) {
    bool triple = std::any_of(a.reports.begin(), a.reports.end(),
                              [](const auto& r) { return r.cls == SingClass::kTriplePoint; });
    return a.type = triple ? BirationalType::kRational : BirationalType::kUndetermined;
  }
  if (ell == 0 && g2 == 0) return a.type = BirationalType::kK3;
  if (ell == 1 && g2 == 0) return a.type = BirationalType::kRational;
  if ((ell == 2 && g2 == 0) || (ell == 0 && g2 == 1)) return a.type = BirationalType::kEllipticRuled;
  return a.type = BirationalType::kUndetermined;
}

/// Singular locus, point reports, cone data and birational type of a
/// surface of degree <= 4. Non-normal non-cone quartics are left
/// UNDETERMINED here; the pipeline settles them with a reduction chain.
inline SurfaceAnalysis analyze_surface(const MultiPoly& f, std::uint64_t seed = 5) {
  if (f.nvars() != 4) throw InvalidInput("surface in P^3 expected (4 variables)");
  SurfaceAnalysis a;
  a.form = f;
  a.locus = singular_locus(f, seed);
  a.cone_vertex = detect_cone(f);
  if (a.cone_vertex) {
    a.cone_genus = delta_genus(cone_base(f, *a.cone_vertex)).genus;
  }
  if (a.locus.dd.dim == 0) {
    if (a.locus.unaccounted_degree != 0)
      throw UnsupportedFieldExtension("singular points with irrational coordinates");
    for (const auto& p : a.locus.points) a.reports.push_back(classify_point(f, p));
  }
  birational_type(a);
  return a;
}

}  // namespace cremona
