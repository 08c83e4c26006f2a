#pragma once

// Minimal Cremona degree of surfaces of degree <= 4 in P^3, with verified
// degree-reduction chains where a construction is available, and stabilizer
// certificates for sigma in {1, 3}.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cremona/maps.hpp"
#include "cremona/plane_curves.hpp"
#include "cremona/singularities.hpp"

namespace cremona {

enum class Route {
  kLowDegreeRational,
  kLowDegreeEllipticCone,
  kCone,
  kK3,
  kUniqueElliptic,
  kEllipticRuledNormal,
  kMonoid,
  kNonNormalLine,
  kNonNormalNoLine,
  kType1,
  kType2,
  kRationalByTheorem,
};

inline std::string route_name(Route r) {
  switch (r) {
    case Route::kLowDegreeRational: return "LOW_DEGREE_RATIONAL";
    case Route::kLowDegreeEllipticCone: return "LOW_DEGREE_ELLIPTIC_CONE";
    case Route::kCone: return "CONE_SECTIONAL_GENUS";
    case Route::kK3: return "K3_RATIONAL_DOUBLE_POINTS";
    case Route::kUniqueElliptic: return "UNIQUE_ELLIPTIC_POINT";
    case Route::kEllipticRuledNormal: return "ELLIPTIC_RULED_NORMAL";
    case Route::kMonoid: return "MONOID";
    case Route::kNonNormalLine: return "NON_NORMAL_LINE";
    case Route::kNonNormalNoLine: return "NON_NORMAL_WITHOUT_DOUBLE_LINE";
    case Route::kType1: return "TYPE1";
    case Route::kType2: return "TYPE2";
    case Route::kRationalByTheorem: return "RATIONAL_BY_THEOREM";
  }
  return "?";
}

struct PipelineOptions {
  std::uint64_t seed = 1;
  /// Also build the Lambda-map prefix for TYPE1/TYPE2 points.
  bool lambda_prefix = true;
};

struct CremonaCertificate {
  MultiPoly input;
  std::optional<int> sigma;
  std::vector<Route> route;
  std::vector<MapStep> chain;
  std::vector<std::string> caveats;
  std::optional<SurfaceAnalysis> analysis;
  /// Set when sigma could not be decided.
  std::optional<ErrorKind> failure;

  struct Transition {
    long degree_before;
    long degree_after;
  };
  std::vector<Transition> transcript() const {
    std::vector<Transition> out;
    for (const auto& s : chain) out.push_back({s.source_dd.degree, s.image_dd.degree});
    return out;
  }
  /// The equation of the last image when it is a hypersurface of P^3.
  std::optional<MultiPoly> terminal_form() const {
    if (chain.empty()) return std::nullopt;
    const auto& last = chain.back();
    if (last.image.nvars() != 4 || last.image_dd.dim != 2) return std::nullopt;
    const auto& gb = last.image.groebner();
    if (gb.polys.size() != 1) return std::nullopt;
    return gb.polys.front();
  }
  bool has_route(Route r) const { return std::find(route.begin(), route.end(), r) != route.end(); }
};

namespace detail {

inline UPoly line_restriction(const MultiPoly& f, const std::vector<Scalar>& a,
                              const std::vector<Scalar>& b) {
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < a.size(); ++i)
    images.push_back(MultiPoly::constant(1, a[i]) + MultiPoly::variable(1, 0) * b[i]);
  return UPoly::from_multipoly(substitute(f, images), 0);
}

inline bool vertex_free_rank_at_most_two(const MultiPoly& quadric) {
  const int n = quadric.nvars();
  Matrix h(n, std::vector<Scalar>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MultiPoly d = derivative(derivative(quadric, i), j);
      h[i][j] = d.is_zero() ? Scalar(0) : d.terms().front().second;
    }
  return rank(h) <= 2;
}

/// Gradient of f at p.
inline std::vector<Scalar> gradient_at(const MultiPoly& f, const ProjPoint& p) {
  std::vector<Scalar> g;
  for (const auto& d : partials(f)) g.push_back(d.evaluate(p.coords()));
  return g;
}

inline bool smooth_point_of(const MultiPoly& f, const ProjPoint& p) {
  auto g = gradient_at(f, p);
  return std::any_of(g.begin(), g.end(), [](const Scalar& v) { return v != 0; });
}

/// Singular point of V(ideal) of the given codimension, by the Jacobian
/// criterion on a prime ideal.
inline bool singular_on(const HomIdeal& ideal, const ProjPoint& p, int codim) {
  for (const auto& g : ideal.generators())
    if (!vanishes_at(g, p)) return false;
  return !jacobian_smooth_at(ideal, p, codim);
}

inline std::vector<Scalar> combine(const ProjPoint& a, const ProjPoint& b, const Scalar& t) {
  std::vector<Scalar> c(a.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + t * b[i];
  return c;
}

/// Limits of a map given by forms vanishing on a line L, at q in L along the
/// normal directions v where the tangent cone of F at q vanishes:
/// [dg_q(v)] for the forms g.
inline std::vector<ProjPoint> exceptional_images(const MultiPoly& f, const RationalMap& phi,
                                                 const LocusComponent& line) {
  const int n = f.nvars();
  std::vector<ProjPoint> out;
  const ProjPoint& a = line.spanning[0];
  const ProjPoint& b = line.spanning[1];
  // two coordinate vectors completing a, b to a basis
  std::vector<int> normal;
  for (int i = 0; i < n && normal.size() < 2; ++i) {
    Matrix m{a.coords(), b.coords()};
    for (int j : normal) {
      std::vector<Scalar> e(n, 0);
      e[j] = 1;
      m.push_back(e);
    }
    std::vector<Scalar> e(n, 0);
    e[i] = 1;
    m.push_back(e);
    if (rank(m) == static_cast<int>(m.size())) normal.push_back(i);
  }
  for (int t = -3; t <= 3; ++t) {
    ProjPoint q(combine(a, b, Scalar(t)));
    std::vector<MultiPoly> images;
    for (int i = 0; i < n; ++i) {
      MultiPoly c = MultiPoly::constant(2, q[i]);
      if (i == normal[0]) c += MultiPoly::variable(2, 0);
      if (i == normal[1]) c += MultiPoly::variable(2, 1);
      images.push_back(c);
    }
    MultiPoly cone = substitute(f, images).homogeneous_part(2);
    if (cone.is_zero()) continue;
    std::vector<std::pair<Scalar, Scalar>> dirs;
    UPoly affine = UPoly::from_multipoly(
        substitute(cone, {MultiPoly::constant(1, 1), MultiPoly::variable(1, 0)}), 0);
    if (affine.degree() < 2) dirs.push_back({Scalar(0), Scalar(1)});
    for (const auto& r : rational_roots(affine)) dirs.push_back({Scalar(1), r});
    for (const auto& [s, u] : dirs) {
      std::vector<Scalar> v(n, 0);
      v[normal[0]] = s;
      v[normal[1]] = u;
      std::vector<Scalar> y;
      bool nonzero = false;
      for (const auto& g : phi.forms()) {
        Scalar d = 0;
        auto grad = gradient_at(g, q);
        for (int i = 0; i < n; ++i) d += grad[i] * v[i];
        if (d != 0) nonzero = true;
        y.push_back(d);
      }
      if (nonzero) out.emplace_back(y);
    }
  }
  return out;
}

/// Points of the given line components other than `skip`, in small steps.
inline std::vector<ProjPoint> points_on_lines(const std::vector<LocusComponent>& comps,
                                              std::size_t skip) {
  std::vector<ProjPoint> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i == skip || comps[i].kind != ComponentKind::kLine) continue;
    const auto& a = comps[i].spanning[0];
    const auto& b = comps[i].spanning[1];
    out.push_back(b);
    for (int t = -3; t <= 3; ++t) out.emplace_back(combine(a, b, Scalar(t)));
  }
  return out;
}

inline void push_unique(std::vector<ProjPoint>& v, const ProjPoint& p) {
  if (std::find(v.begin(), v.end(), p) == v.end()) v.push_back(p);
}

}  // namespace detail

/// Irreducibility over Q certified by one line restriction that is
/// irreducible modulo a prime. Throws InvalidInput when no certificate is
/// found, which in practice means the form factors.
inline void certify_irreducible(const MultiPoly& f, std::uint64_t seed = 3) {
  const int d = f.total_degree();
  if (d <= 1) return;
  if (d == 2 && detail::vertex_free_rank_at_most_two(f))
    throw InvalidInput("reducible input: quadric of rank at most 2");
  static const std::uint64_t primes[] = {5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                                         59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};
  Rng rng(seed);
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::vector<Scalar> a(f.nvars()), b(f.nvars());
    for (auto& v : a) v = rng.small_scalar(5);
    for (auto& v : b) v = rng.small_scalar(5);
    UPoly u = detail::line_restriction(f, a, b);
    if (u.degree() != d) continue;
    for (auto p : primes)
      if (irreducible_mod_p(u, p)) return;
  }
  throw InvalidInput("reducible input: no irreducible line section found");
}

namespace detail {

inline std::optional<ProjPoint> double_point_of_cubic(const SurfaceAnalysis& a) {
  for (const auto& r : a.reports)
    if (r.multiplicity == 2) return r.point;
  return std::nullopt;
}

inline void attach_failure(CremonaCertificate& c, const Error& e) {
  c.failure = e.kind();
  c.caveats.push_back(e.what());
}

}  // namespace detail

/// sigma for an irreducible surface of degree <= 3.
inline CremonaCertificate classify_low_degree(const MultiPoly& f, const PipelineOptions& opt = {}) {
  if (f.nvars() != 4 || !f.is_homogeneous() || f.is_zero())
    throw InvalidInput("surface in P^3 expected");
  const int d = f.total_degree();
  if (d > 3) throw InvalidInput("classify_low_degree: degree at most 3 expected");
  certify_irreducible(f, opt.seed);
  CremonaCertificate c;
  c.input = f;
  if (d == 1) {
    c.sigma = 1;
    c.route.push_back(Route::kLowDegreeRational);
    return c;
  }
  SurfaceAnalysis a;
  a.form = f;
  a.cone_vertex = detect_cone(f);
  if (a.cone_vertex && d == 3) {
    a.cone_genus = delta_genus(cone_base(f, *a.cone_vertex)).genus;
    birational_type(a);
    c.analysis = a;
    if (*a.cone_genus == 1) {
      c.sigma = 3;
      c.route = {Route::kLowDegreeEllipticCone};
      return c;
    }
    c.sigma = 1;
    c.route = {Route::kLowDegreeRational};
    return c;
  }
  c.sigma = 1;
  c.route.push_back(Route::kLowDegreeRational);
  // witness: a point of multiplicity d - 1
  std::optional<ProjPoint> center;
  if (d == 3) {
    try {
      a = analyze_surface(f, opt.seed);
      c.analysis = a;
      center = detail::double_point_of_cubic(a);
    } catch (const Error& e) {
      c.caveats.push_back(std::string("no witness: ") + e.what());
    }
  } else {
    Rng rng(opt.seed);
    for (const auto& p : sample_points(f, 4, rng))
      if (detail::smooth_point_of(f, p)) {
        center = p;
        break;
      }
  }
  if (center) {
    c.route.push_back(Route::kMonoid);
    c.chain.push_back(image(monoid_map(f, *center), HomIdeal(4, {f}), "monoid"));
  } else if (c.caveats.empty()) {
    c.caveats.push_back("no rational center for a monoid witness; rational by classification");
  }
  return c;
}

// ---------------------------------------------------------------------------
// Reduction chains

struct ChainResult {
  std::vector<MapStep> steps;
  std::vector<std::string> notes;
  bool complete = false;
};

/// Quadrics through a double line, then two projections from singular
/// points: a quartic singular along a line goes to a surface of degree 7 in
/// P^5, of degree 5 in P^4 and finally to a cubic surface in P^3.
inline ChainResult non_normal_chain(const MultiPoly& f, const SingularLocus& locus, Rng& rng,
                                    int attempts = 6) {
  ChainResult res;
  std::size_t line_index = locus.components.size();
  for (std::size_t i = 0; i < locus.components.size(); ++i)
    if (locus.components[i].kind == ComponentKind::kLine) {
      line_index = i;
      break;
    }
  if (line_index == locus.components.size())
    throw Undetermined("no rational double line in the singular locus");
  const auto& line = locus.components[line_index];
  HomIdeal surface(4, {f});

  auto samples = sample_points(f, 24 + 4 * attempts, rng);
  std::vector<ProjPoint> general;
  for (const auto& p : samples)
    if (detail::smooth_point_of(f, p)) general.push_back(p);
  int tried = 0;
  for (const auto& x : general) {
    if (tried++ >= attempts) break;
    RationalMap phi = quadrics_through_line(line.ideal, x);
    std::vector<ProjPoint> pushed;
    for (const auto& s : general)
      if (!(s == x)) pushed.push_back(s);
    MapStep s1 = image(phi, surface, "quadrics through the double line and " + x.to_string(), pushed);
    if (s1.image_dd != DimDegree{2, 7}) {
      res.notes.push_back("point " + x.to_string() + " not general: image degree " +
                          std::to_string(s1.image_dd.degree));
      continue;
    }
    // singular points of the degree 7 image
    std::vector<ProjPoint> sing;
    for (const auto& q : detail::points_on_lines(locus.components, line_index))
      if (auto y = phi.apply(q)) detail::push_unique(sing, *y);
    for (const auto& y : detail::exceptional_images(f, phi, line)) detail::push_unique(sing, y);
    std::vector<ProjPoint> sing_ok;
    for (const auto& y : sing)
      if (detail::singular_on(s1.image, y, 3)) sing_ok.push_back(y);
    if (sing_ok.size() < 2) {
      res.notes.push_back("fewer than two rational singular points found on the degree 7 image");
      continue;
    }
    for (std::size_t iy = 0; iy < sing_ok.size() && !res.complete; ++iy) {
      const auto& y = sing_ok[iy];
      RationalMap pi = projection(y);
      std::vector<ProjPoint> pushed1, pushed2;
      for (const auto& s : pushed)
        if (auto t = phi.apply(s)) {
          pushed1.push_back(*t);
          if (auto u = pi.apply(*t)) pushed2.push_back(*u);
        }
      MapStep s2 = image(pi, s1.image, "projection from " + y.to_string(), {});
      if (s2.image_dd != DimDegree{2, 5}) continue;
      for (std::size_t iz = 0; iz < sing_ok.size(); ++iz) {
        if (iz == iy) continue;
        auto z = pi.apply(sing_ok[iz]);
        if (!z || !detail::singular_on(s2.image, *z, 2)) continue;
        MapStep s3 = image(projection(*z), s2.image, "projection from " + z->to_string(), pushed2);
        if (s3.image_dd != DimDegree{2, 3}) continue;
        // re-run the middle step with samples now that the chain is known
        s2 = image(pi, s1.image, s2.label, pushed1);
        res.steps = {s1, s2, s3};
        res.complete = true;
        break;
      }
    }
    if (res.complete) return res;
    res.notes.push_back("no projection centers gave the degrees 5 and 3 for x = " + x.to_string());
  }
  throw Undetermined("non-normal reduction chain: no admissible choice of general points");
}

/// The Lambda-map step for a TYPE1 (a = 1) or TYPE2 (a = 2) point.
inline ChainResult lambda_prefix(const MultiPoly& f, int a, const ProjPoint& p) {
  ChainResult res;
  RationalMap lam = lambda_map(f, a, p);
  res.steps.push_back(image(lam, HomIdeal(4, {f}), "Lambda_" + std::to_string(a)));
  const long expected = 10 - 2 * a;
  if (res.steps.back().image_dd.degree != expected)
    res.notes.push_back("Lambda_" + std::to_string(a) + " image of the surface has degree " +
                        std::to_string(res.steps.back().image_dd.degree) + ", not " +
                        std::to_string(expected));
  res.notes.push_back("chain beyond the Lambda step is not constructed");
  return res;
}

namespace detail {

// Quadratic transformation of the base plane of a cone with vertex e0 (after
// `to_vertex`), centred at three non-collinear points, lifted to P^3 as
// [x0 * l : q0 : q1 : q2].
inline RationalMap lifted_quadratic_transform(const LinearChange& to_vertex,
                                              const std::vector<ProjPoint>& centers) {
  Matrix cols(3, std::vector<Scalar>(3));
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) cols[i][j] = centers[j][i];
  Matrix b = inverse(cols);  // sends centers to coordinate points
  std::vector<MultiPoly> y;
  for (int i = 0; i < 3; ++i) {
    MultiPoly l(4);
    for (int j = 0; j < 3; ++j)
      if (b[i][j] != 0) l += MultiPoly::variable(4, j + 1) * b[i][j];
    y.push_back(l);
  }
  std::vector<MultiPoly> frame{MultiPoly::variable(4, 0) * y[0], y[1] * y[2], y[0] * y[2],
                               y[0] * y[1]};
  auto lin = LinearChange::linear_forms(to_vertex.matrix(), 4);
  std::vector<MultiPoly> forms;
  for (const auto& h : frame) forms.push_back(substitute(h, lin));
  return RationalMap(3, forms).with_frame(to_vertex.matrix(), frame);
}

}  // namespace detail

/// For a quartic cone whose base curve has exactly two ordinary rational
/// nodes: the lifted quadratic transformation centred at the nodes and a
/// smooth point of the base maps it onto a cubic cone.
inline ChainResult cone_chain(const MultiPoly& f, const ProjPoint& vertex, Rng& rng) {
  ChainResult res;
  MultiPoly base = cone_base(f, vertex);
  if (base.total_degree() != 4) throw Undetermined("cone chain needs a quartic cone");
  Cluster cl = resolve_cluster(base);
  std::vector<ProjPoint> nodes;
  for (const auto& p : cl.points) {
    if (p.level > 0) throw Undetermined("cone chain: base curve has infinitely near singular points");
    nodes.push_back(p.origin);
  }
  if (nodes.size() != 2) throw Undetermined("cone chain: base curve does not have exactly two nodes");
  LinearChange to_vertex = LinearChange::sending_to_coordinate_point(vertex, 0);
  for (const auto& s : sample_points(base, 16, rng)) {
    if (s == nodes[0] || s == nodes[1]) continue;
    Matrix m{nodes[0].coords(), nodes[1].coords(), s.coords()};
    if (rank(m) < 3) continue;
    RationalMap phi = detail::lifted_quadratic_transform(to_vertex, {nodes[0], nodes[1], s});
    MapStep step = image(phi, HomIdeal(4, {f}), "lifted quadratic transformation");
    if (step.image_dd != DimDegree{2, 3}) continue;
    res.steps.push_back(step);
    res.complete = true;
    return res;
  }
  throw Undetermined("cone chain: no rational smooth point of the base curve off the nodal line");
}

// ---------------------------------------------------------------------------
// Main classifier

/// sigma in {1, 3, 4} for an irreducible quartic surface (or {1, 3} in
/// degree <= 3), with the route that decided it and any witness chain.
inline CremonaCertificate minimal_cremona_degree(const MultiPoly& f, const PipelineOptions& opt = {}) {
  if (f.nvars() != 4 || !f.is_homogeneous() || f.is_zero())
    throw InvalidInput("surface in P^3 expected");
  const int d = f.total_degree();
  if (d <= 3) return classify_low_degree(f, opt);
  if (d > 4) throw InvalidInput("degree at most 4 supported");
  certify_irreducible(f, opt.seed);

  CremonaCertificate c;
  c.input = f;
  Rng rng(opt.seed);
  try {
    c.analysis = analyze_surface(f, opt.seed);
  } catch (const UnsupportedFieldExtension& e) {
    detail::attach_failure(c, e);
    return c;
  } catch (const Undetermined& e) {
    detail::attach_failure(c, e);
    return c;
  }
  SurfaceAnalysis& a = *c.analysis;

  if (a.cone_vertex) {
    c.route.push_back(Route::kCone);
    long g = *a.cone_genus;
    c.sigma = g >= 2 ? 4 : (g == 1 ? 3 : 1);
    if (g == 1) {
      try {
        c.chain = cone_chain(f, *a.cone_vertex, rng).steps;
      } catch (const Error& e) {
        c.caveats.push_back(std::string("no witness chain: ") + e.what());
      }
    }
    return c;
  }

  if (a.normal()) {
    auto triple = std::find_if(a.reports.begin(), a.reports.end(),
                               [](const auto& r) { return r.cls == SingClass::kTriplePoint; });
    if (triple != a.reports.end()) {
      c.sigma = 1;
      c.route.push_back(Route::kMonoid);
      c.chain.push_back(image(monoid_map(f, triple->point), HomIdeal(4, {f}), "monoid"));
      return c;
    }
    switch (a.type) {
      case BirationalType::kK3:
        c.sigma = 4;
        c.route.push_back(Route::kK3);
        return c;
      case BirationalType::kRational: {
        c.sigma = 1;
        c.route.push_back(Route::kUniqueElliptic);
        c.route.push_back(Route::kRationalByTheorem);
        break;
      }
      case BirationalType::kEllipticRuled:
        c.sigma = 3;
        c.route.push_back(Route::kEllipticRuledNormal);
        break;
      default:
        c.failure = ErrorKind::kUndetermined;
        c.caveats.push_back("UNDETERMINED: singular point outside the recognised classes");
        return c;
    }
    if (opt.lambda_prefix) {
      for (const auto& r : a.reports) {
        int alpha = r.cls == SingClass::kType1 ? 1 : (r.cls == SingClass::kType2 ? 2 : 0);
        if (alpha == 0) continue;
        c.route.push_back(alpha == 1 ? Route::kType1 : Route::kType2);
        try {
          auto pre = lambda_prefix(f, alpha, r.point);
          c.chain = pre.steps;
          for (auto& n : pre.notes) c.caveats.push_back(n);
        } catch (const Error& e) {
          c.caveats.push_back(std::string("Lambda step failed: ") + e.what());
        }
        break;
      }
    }
    return c;
  }

  // non-normal, not a cone: sigma is 1 or 3 and the cubic at the end of the
  // chain decides
  bool has_line = std::any_of(a.locus.components.begin(), a.locus.components.end(),
                              [](const auto& comp) { return comp.kind == ComponentKind::kLine; });
  if (!has_line) {
    c.sigma = 1;
    a.type = BirationalType::kRational;
    c.route = {Route::kNonNormalNoLine, Route::kRationalByTheorem};
    c.caveats.push_back("singular curve has no rational line component; rational by classification");
    return c;
  }
  c.route.push_back(Route::kNonNormalLine);
  try {
    ChainResult chain = non_normal_chain(f, a.locus, rng);
    c.chain = chain.steps;
    for (auto& n : chain.notes) c.caveats.push_back(n);
    MultiPoly cubic = *c.terminal_form();
    CremonaCertificate low = classify_low_degree(cubic, opt);
    c.sigma = low.sigma;
    for (auto r : low.route) c.route.push_back(r);
    a.type = *c.sigma == 3 ? BirationalType::kEllipticRuled : BirationalType::kRational;
  } catch (const Error& e) {
    detail::attach_failure(c, e);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Stabilizers

struct StabilizerCertificate {
  bool constructive = false;
  std::string kind;  // CUBIC_CONE_INVOLUTION, HYPERPLANE_MODIFICATION or NOT_CONSTRUCTIVE
  std::optional<RationalMap> map;  // acts on the terminal model of the chain
  std::optional<MultiPoly> model;  // equation of the terminal model
  bool preserves_model = false;
  int moved_points = 0;
  std::vector<std::string> notes;
};

namespace detail {

inline std::optional<MultiPoly> terminal_or_input(const CremonaCertificate& c) {
  if (auto t = c.terminal_form()) return t;
  if (c.chain.empty() && c.input.total_degree() <= 3) return c.input;
  return std::nullopt;
}

}  // namespace detail

/// A non-trivial birational self-map of P^3 preserving the terminal model of
/// the witness chain: the cubic involution construction when that model is
/// a cubic, a quadratic modification fixing it when it is a plane.
inline StabilizerCertificate stabilizer_certificate(const CremonaCertificate& c,
                                                    std::uint64_t seed = 1) {
  StabilizerCertificate s;
  s.kind = "NOT_CONSTRUCTIVE";
  if (!c.sigma || *c.sigma == 4) {
    s.notes.push_back("no stabilizer construction is known for sigma = 4");
    return s;
  }
  auto model = detail::terminal_or_input(c);
  if (!model) {
    s.notes.push_back("no witness chain to a model of degree sigma");
    return s;
  }
  Rng rng(seed);
  s.model = *model;
  const int deg = model->total_degree();
  if (deg == 1) {
    // coordinates (l0, l1, l2, h) with the plane h = 0; the map
    // [l0^2 : l0 l1 : l0 l2 + l1^2 : l0 h] fixes it
    Matrix m = identity_matrix(4);
    std::vector<Scalar> h(4);
    for (const auto& [mon, coef] : model->terms())
      for (int i = 0; i < 4; ++i)
        if (mon.exp[i]) h[i] = coef;
    int pivot = 0;
    while (h[pivot] == 0) ++pivot;
    std::vector<std::vector<Scalar>> rows;
    for (int i = 0; i < 4; ++i)
      if (i != pivot) rows.push_back(m[i]);
    rows.push_back(h);
    auto lin = LinearChange::linear_forms(rows, 4);
    MultiPoly l0 = lin[0], l1 = lin[1], l2 = lin[2], hh = lin[3];
    std::vector<MultiPoly> frame{l0 * l0, l0 * l1, l0 * l2 + l1 * l1, l0 * hh};
    // express the output again in the original coordinates
    std::vector<MultiPoly> forms;
    Matrix inv = inverse(rows);
    for (int i = 0; i < 4; ++i) {
      MultiPoly acc(4);
      for (int j = 0; j < 4; ++j)
        if (inv[i][j] != 0) acc += frame[j] * inv[i][j];
      forms.push_back(acc);
    }
    RationalMap omega(3, forms);
    HomIdeal plane(4, {*model});
    s.preserves_model = image_ideal(omega, plane).same_as(plane);
    for (int i = 0; i < 24 && s.moved_points < 4; ++i) {
      std::vector<Scalar> v(4);
      for (auto& x : v) x = rng.small_scalar(4);
      if (std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x == 0; })) continue;
      ProjPoint p(v);
      auto q = omega.apply(p);
      if (q && !(*q == p)) ++s.moved_points;
    }
    s.map = omega;
    s.kind = "HYPERPLANE_MODIFICATION";
    s.constructive = true;
    return s;
  }
  if (deg == 3) {
    for (int attempt = 0; attempt < 6; ++attempt) {
      auto pts = sample_points(*model, 8, rng);
      std::optional<ProjPoint> p;
      for (const auto& q : pts)
        if (detail::smooth_point_of(*model, q)) {
          p = q;
          break;
        }
      if (!p) continue;
      MultiPoly quad(4);
      for (const auto& mon : monomials_of_degree(4, 2)) quad += MultiPoly::term(4, mon, rng.small_scalar(3));
      if (quad.is_zero()) continue;
      Stabilizer st = verify_cubic_stabilizer(*model, quad, *p, rng);
      if (!st.preserves_x || st.moved_off_x == 0) {
        s.notes.push_back("choice of Q, p rejected; retrying");
        continue;
      }
      s.map = st.omega;
      s.preserves_model = true;
      s.moved_points = st.moved_off_x;
      s.kind = "CUBIC_CONE_INVOLUTION";
      s.constructive = true;
      s.notes.push_back("center " + p->to_string() + ", Q = " + quad.to_string());
      return s;
    }
    s.notes.push_back("no admissible (Q, p) found");
    return s;
  }
  s.notes.push_back("terminal model has degree " + std::to_string(deg));
  return s;
}

}  // namespace cremona
