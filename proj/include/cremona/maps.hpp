#pragma once

// Rational maps between projective spaces, their images, and the specific
// maps used in degree-reduction chains: monoid systems, projections,
// quadrics through a line, the Lambda systems of a double point with an
// infinitely near double line, and the cubic involution with its stabilizer.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "cremona/ideal.hpp"
#include "cremona/linalg.hpp"
#include "cremona/projective.hpp"
#include "cremona/singularities.hpp"
#include "cremona/univariate.hpp"

namespace cremona {

namespace detail {

// Restriction of f to the line {s*a + b}, as a polynomial in s.
inline UPoly restrict_to_line(const MultiPoly& f, const std::vector<Scalar>& a,
                              const std::vector<Scalar>& b) {
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < a.size(); ++i)
    images.push_back(MultiPoly::variable(1, 0) * a[i] + MultiPoly::constant(1, b[i]));
  return UPoly::from_multipoly(substitute(f, images), 0);
}

// Exact quotient f / g; throws if g does not divide f.
inline MultiPoly exact_divide(MultiPoly f, const MultiPoly& g) {
  if (g.is_zero()) throw InvalidInput("exact_divide: division by zero");
  const int n = f.nvars();
  std::vector<MultiPoly::Term> q;
  const auto& [gm, gc] = g.terms().front();
  while (!f.is_zero()) {
    const auto& [fm, fc] = f.terms().front();
    if (!gm.divides(fm)) throw InvalidInput("exact_divide: not divisible");
    Monomial m = fm / gm;
    Scalar c = fc / gc;
    q.emplace_back(m, c);
    f -= g.multiply_monomial(m, c);
  }
  return MultiPoly::from_terms(n, std::move(q));
}

// gcd of two forms via the generator of (f) intersected with (g).
inline MultiPoly gcd_by_intersection(const MultiPoly& f, const MultiPoly& g) {
  const int n = f.nvars();
  std::vector<MultiPoly> shift;
  for (int i = 0; i < n; ++i) shift.push_back(MultiPoly::variable(n + 1, i + 1));
  MultiPoly t = MultiPoly::variable(n + 1, 0);
  MultiPoly one = MultiPoly::constant(n + 1, 1);
  auto inter = eliminate({t * substitute(f, shift), (one - t) * substitute(g, shift)}, 1);
  const MultiPoly* lcm = nullptr;
  for (const auto& h : inter)
    if (!lcm || h.total_degree() < lcm->total_degree()) lcm = &h;
  if (!lcm) throw InvalidInput("gcd: empty intersection");
  return exact_divide(f * g, *lcm).primitive();
}

}  // namespace detail

/// Greatest common divisor of a family of forms (primitive, up to sign).
/// A random line restriction proves coprimality cheaply in the common case.
inline MultiPoly forms_gcd(const std::vector<MultiPoly>& forms, std::uint64_t seed = 11) {
  std::vector<MultiPoly> nz;
  for (const auto& f : forms)
    if (!f.is_zero()) nz.push_back(f);
  if (nz.empty()) throw InvalidInput("forms_gcd: all forms vanish");
  const int n = nz[0].nvars();
  for (const auto& f : nz)
    if (f.is_constant()) return MultiPoly::constant(n, 1);
  Rng rng(seed);
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<Scalar> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = rng.small_scalar(9);
      b[i] = rng.small_scalar(9);
    }
    UPoly g;
    bool all_vanish_at_a = true;
    for (const auto& f : nz) {
      g = UPoly::gcd(g, detail::restrict_to_line(f, a, b));
      if (f.evaluate(a) != 0) all_vanish_at_a = false;
    }
    if (g.degree() == 0 && !all_vanish_at_a) return MultiPoly::constant(n, 1);
  }
  MultiPoly g = nz[0];
  for (std::size_t i = 1; i < nz.size() && !g.is_constant(); ++i)
    g = detail::gcd_by_intersection(g, nz[i]);
  return g.primitive();
}

class RationalMap {
 public:
  RationalMap() = default;

  /// Map P^source_dim -> P^(forms.size()-1). A common factor of the forms is
  /// divided out.
  RationalMap(int source_dim, std::vector<MultiPoly> forms, bool remove_common_factor = true)
      : source_dim_(source_dim) {
    if (forms.empty()) throw InvalidInput("RationalMap: no forms");
    int deg = -1;
    bool any = false;
    for (const auto& f : forms) {
      if (f.nvars() != source_dim + 1) throw InvalidInput("RationalMap: form arity");
      if (f.is_zero()) continue;
      if (!f.is_homogeneous()) throw InvalidInput("RationalMap: forms must be homogeneous");
      if (deg >= 0 && f.total_degree() != deg)
        throw InvalidInput("RationalMap: forms of different degrees");
      deg = f.total_degree();
      any = true;
    }
    if (!any) throw InvalidInput("RationalMap: all forms are zero");
    if (remove_common_factor && deg > 1) {
      MultiPoly g = forms_gcd(forms);
      if (!g.is_constant())
        for (auto& f : forms)
          if (!f.is_zero()) f = detail::exact_divide(f, g);
    }
    forms_ = std::move(forms);
  }

  int source_dim() const { return source_dim_; }
  int target_dim() const { return static_cast<int>(forms_.size()) - 1; }
  const std::vector<MultiPoly>& forms() const { return forms_; }

  int degree() const {
    for (const auto& f : forms_)
      if (!f.is_zero()) return f.total_degree();
    return 0;
  }

  /// Image of a point, or nullopt on the base locus.
  std::optional<ProjPoint> apply(const ProjPoint& p) const {
    std::vector<Scalar> v;
    bool nonzero = false;
    for (const auto& f : forms_) {
      v.push_back(f.evaluate(p.coords()));
      if (v.back() != 0) nonzero = true;
    }
    if (!nonzero) return std::nullopt;
    return ProjPoint(v);
  }

  /// next o this.
  RationalMap then(const RationalMap& next) const {
    if (next.source_dim() != target_dim()) throw InvalidInput("compose: dimension mismatch");
    std::vector<MultiPoly> out;
    for (const auto& f : next.forms()) out.push_back(substitute(f, forms_));
    return RationalMap(source_dim_, std::move(out));
  }

  /// Records that forms = frame_forms o (x -> to_frame x); images are then
  /// computed from the sparser frame forms on the transformed source.
  RationalMap with_frame(Matrix to_frame, std::vector<MultiPoly> frame_forms) const {
    RationalMap r = *this;
    r.to_frame_ = std::move(to_frame);
    r.frame_forms_ = std::move(frame_forms);
    return r;
  }
  bool has_frame() const { return !to_frame_.empty(); }
  const Matrix& to_frame() const { return to_frame_; }
  RationalMap frame_map() const { return RationalMap(source_dim_, frame_forms_); }

  /// Pull back a form on the target: F o map.
  MultiPoly pullback(const MultiPoly& f) const { return substitute(f, forms_); }

  std::vector<std::string> form_strings() const {
    std::vector<std::string> out;
    for (const auto& f : forms_) out.push_back(f.to_string());
    return out;
  }

 private:
  int source_dim_ = 0;
  std::vector<MultiPoly> forms_;
  Matrix to_frame_;
  std::vector<MultiPoly> frame_forms_;
};

/// One verified step of a chain: a map, the source variety, and its image.
struct MapStep {
  std::string label;
  RationalMap map;
  HomIdeal source;
  HomIdeal image;
  DimDegree source_dd{};
  DimDegree image_dd{};
  std::vector<std::string> notes;
};

namespace detail {

inline bool all_linear(const RationalMap& m) { return m.degree() == 1; }

// Image under a linear map of full rank: complete the forms to coordinates
// and eliminate the complementary ones.
inline HomIdeal linear_image(const RationalMap& map, const HomIdeal& source) {
  const int n = map.source_dim() + 1;
  const int m = map.target_dim() + 1;
  Matrix rows(m, std::vector<Scalar>(n, 0));
  for (int i = 0; i < m; ++i)
    for (const auto& [mono, c] : map.forms()[i].terms())
      for (int j = 0; j < n; ++j)
        if (mono.exp[j]) rows[i][j] = c;
  if (rank(rows) != m) throw InvalidInput("linear map is not surjective");
  // complement: unit vectors not in the row space
  Matrix full;
  std::vector<std::vector<Scalar>> extra;
  Matrix acc = rows;
  for (int j = 0; j < n && static_cast<int>(extra.size()) < n - m; ++j) {
    std::vector<Scalar> e(n, 0);
    e[j] = 1;
    acc.push_back(e);
    if (rank(acc) == m + static_cast<int>(extra.size()) + 1) {
      extra.push_back(e);
    } else {
      acc.pop_back();
    }
  }
  for (auto& e : extra) full.push_back(e);
  for (auto& r : rows) full.push_back(r);
  LinearChange change(full);
  std::vector<MultiPoly> moved;
  for (const auto& g : source.generators()) moved.push_back(change.transform(g));
  if (n - m == 0) return HomIdeal(m, moved);
  return HomIdeal(m, eliminate(moved, n - m));
}

// Kernel of k[y] -> k[x]/I, y_j -> g_j, by weighted elimination of x.
inline HomIdeal kernel_image(const RationalMap& map, const HomIdeal& source) {
  const int n = map.source_dim() + 1;
  const int m = map.target_dim() + 1;
  if (n + m > kMaxVars) throw InvalidInput("image: too many variables");
  const int e = map.degree();
  std::vector<MultiPoly> to_x;
  for (int i = 0; i < n; ++i) to_x.push_back(MultiPoly::variable(n + m, i));
  std::vector<MultiPoly> gens;
  for (const auto& g : source.generators()) gens.push_back(substitute(g, to_x));
  for (int j = 0; j < m; ++j)
    gens.push_back(MultiPoly::variable(n + m, n + j) - substitute(map.forms()[j], to_x));
  std::vector<int> weights(n + m, 1);
  for (int j = 0; j < m; ++j) weights[n + j] = e;
  return HomIdeal(m, eliminate(gens, n, weights));
}

}  // namespace detail

/// Ideal of the closure of map(V(source) minus the base locus).
inline HomIdeal image_ideal(const RationalMap& map, const HomIdeal& source) {
  bool all_in = true;
  for (const auto& f : map.forms())
    if (!source.contains(f)) all_in = false;
  if (all_in) throw InvalidInput("image: variety lies in the base locus");
  if (map.has_frame()) {
    LinearChange t(map.to_frame());
    std::vector<MultiPoly> moved;
    for (const auto& g : source.generators()) moved.push_back(t.transform(g));
    RationalMap plain = map.frame_map();
    HomIdeal moved_source(source.nvars(), moved);
    HomIdeal img = detail::all_linear(plain) ? detail::linear_image(plain, moved_source)
                                             : detail::kernel_image(plain, moved_source);
    return img.canonical();
  }
  HomIdeal img = detail::all_linear(map) ? detail::linear_image(map, source)
                                         : detail::kernel_image(map, source);
  return img.canonical();
}

/// Jacobian criterion at a point: true when the point is a smooth point of a
/// reduced component of the expected codimension.
inline bool jacobian_smooth_at(const HomIdeal& ideal, const ProjPoint& p, int codim) {
  Matrix jac;
  for (const auto& g : ideal.generators()) {
    std::vector<Scalar> row;
    for (const auto& d : partials(g)) row.push_back(d.evaluate(p.coords()));
    jac.push_back(std::move(row));
  }
  return !jac.empty() && rank(jac) == codim;
}

/// Rational points of V(F) of small height, found by fixing all but one
/// coordinate and solving for the last. Deterministic for a given rng state.
inline std::vector<ProjPoint> sample_points(const MultiPoly& f, int want, Rng& rng, int height = 4,
                                            int max_tries = 4000) {
  const int n = f.nvars();
  std::vector<ProjPoint> out;
  for (int attempt = 0; attempt < max_tries && static_cast<int>(out.size()) < want; ++attempt) {
    int solved = static_cast<int>(rng.uniform(0, n - 1));
    std::vector<Scalar> fixed(n, 0);
    bool nonzero = false;
    for (int i = 0; i < n; ++i)
      if (i != solved) {
        fixed[i] = rng.small_scalar(height);
        if (fixed[i] != 0) nonzero = true;
      }
    if (!nonzero) continue;
    std::vector<MultiPoly> images;
    for (int i = 0; i < n; ++i)
      images.push_back(i == solved ? MultiPoly::variable(1, 0) : MultiPoly::constant(1, fixed[i]));
    MultiPoly r = substitute(f, images);
    if (r.is_zero()) continue;
    for (const auto& root : rational_roots(UPoly::from_multipoly(r, 0))) {
      std::vector<Scalar> c = fixed;
      c[solved] = root;
      ProjPoint p(c);
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
  }
  return out;
}

namespace detail {

inline std::vector<ProjPoint> default_samples(const HomIdeal& source, int want) {
  Rng rng(17);
  const auto& gens = source.generators();
  if (gens.size() == 1) return sample_points(gens.front(), want, rng);
  std::vector<ProjPoint> out;
  if (!gens.empty()) return out;
  while (static_cast<int>(out.size()) < want) {
    std::vector<Scalar> v(static_cast<std::size_t>(source.nvars()));
    for (auto& x : v) x = rng.small_scalar(5);
    out.emplace_back(v);
  }
  return out;
}

}  // namespace detail

/// Image step with its dimension/degree record. Sample points of the source
/// (drawn deterministically when none are given) are pushed forward, checked
/// against the image ideal and used for a Jacobian reducedness spot-check and
/// a sample-level injectivity check.
inline MapStep image(const RationalMap& map, const HomIdeal& source, std::string label,
                     std::vector<ProjPoint> samples = {}) {
  MapStep step;
  step.label = std::move(label);
  step.map = map;
  step.source = source;
  step.source_dd = dim_degree(source);
  step.image = image_ideal(map, source);
  step.image_dd = dim_degree(step.image);
  if (samples.empty()) samples = detail::default_samples(source, 6);
  std::vector<ProjPoint> pushed;
  bool reduced = false;
  for (const auto& p : samples) {
    auto q = map.apply(p);
    if (!q) continue;
    for (const auto& g : step.image.generators())
      if (!vanishes_at(g, *q))
        throw InvalidInput("image: pushed-forward sample point off the image");
    if (!reduced && jacobian_smooth_at(step.image, *q, map.target_dim() - step.image_dd.dim)) {
      reduced = true;
      step.notes.push_back("reducedness spot-check passed at " + q->to_string());
    }
    pushed.push_back(*q);
  }
  if (pushed.empty()) {
    step.notes.push_back("no sample point outside the base locus; reducedness spot-check not performed");
    return step;
  }
  if (!reduced)
    step.notes.push_back("REDUCEDNESS_UNVERIFIED: image not smooth at any pushed-forward sample; degree counts multiplicity");
  std::vector<ProjPoint> distinct = pushed;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (step.image_dd.dim == step.source_dd.dim)
    step.notes.push_back("sample-level injectivity: " + std::to_string(distinct.size()) + " distinct images of " +
                         std::to_string(pushed.size()) + " samples");
  return step;
}

// ---------------------------------------------------------------------------
// Constructors

/// Linear forms spanning the hyperplanes through `center`.
inline RationalMap projection(const ProjPoint& center) {
  const int n = center.dim();
  Matrix row{center.coords()};
  auto ker = kernel(row, n + 1);
  // order the basis so that a coordinate point e_k gives (x_i)_{i != k}
  std::vector<MultiPoly> forms;
  for (const auto& v : ker) {
    MultiPoly l(n + 1);
    for (int j = 0; j <= n; ++j)
      if (v[j] != 0) l += MultiPoly::variable(n + 1, j) * v[j];
    forms.push_back(l);
  }
  return RationalMap(n, forms);
}

/// The degree d system {F_{d-1} x_i, F} for a point p of multiplicity d-1.
inline RationalMap monoid_map(const MultiPoly& f, const ProjPoint& p) {
  const int n = p.dim();
  const int d = f.total_degree();
  if (d < 2 || multiplicity_at(f, p) != d - 1)
    throw InvalidInput("monoid_map: point is not of multiplicity deg F - 1");
  LinearChange a = LinearChange::sending_to_coordinate_point(p, n);
  MultiPoly g = a.transform(f);
  std::vector<MultiPoly> zero_last;
  for (int i = 0; i <= n; ++i)
    zero_last.push_back(i == n ? MultiPoly(n + 1) : MultiPoly::variable(n + 1, i));
  MultiPoly g_low = substitute(derivative(g, n), zero_last);  // coefficient of x_n
  std::vector<MultiPoly> forms;
  for (int i = 0; i < n; ++i) forms.push_back(g_low * MultiPoly::variable(n + 1, i));
  forms.push_back(g);
  // precompose with p -> e_n
  auto lin = LinearChange::linear_forms(a.matrix(), n + 1);
  std::vector<MultiPoly> moved;
  for (const auto& h : forms) moved.push_back(substitute(h, lin));
  return RationalMap(n, moved).with_frame(a.matrix(), forms);
}

/// Basis of the quadrics containing the line V(line) and the point x.
inline RationalMap quadrics_through_line(const HomIdeal& line, const ProjPoint& x) {
  const int n = line.nvars();
  std::vector<MultiPoly> lin;
  for (const auto& g : line.groebner().polys)
    if (g.total_degree() == 1) lin.push_back(g);
  if (static_cast<int>(lin.size()) != n - 2 || dim_degree(line) != DimDegree{1, 1})
    throw InvalidInput("quadrics_through_line: ideal is not a line");
  bool on_line = true;
  for (const auto& l : lin)
    if (!vanishes_at(l, x)) on_line = false;
  if (on_line) throw InvalidInput("quadrics_through_line: point lies on the line");
  std::vector<MultiPoly> products;
  for (const auto& l : lin)
    for (int j = 0; j < n; ++j) products.push_back(l * MultiPoly::variable(n, j));
  auto basis = span_basis(products);
  // kernel of evaluation at x
  Matrix row(1);
  for (const auto& q : basis) row[0].push_back(q.evaluate(x.coords()));
  auto ker = kernel(row, static_cast<int>(basis.size()));
  std::vector<MultiPoly> forms;
  for (const auto& v : ker) {
    MultiPoly q(n);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) q += basis[i] * v[i];
    forms.push_back(q);
  }
  forms = span_basis(forms);
  return RationalMap(n - 1, forms);
}

/// Weighted order of a polynomial for monomial weights.
inline int weighted_order(const MultiPoly& f, const std::vector<int>& weights) {
  int best = -1;
  for (const auto& [m, c] : f.terms()) {
    int w = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) w += weights[i] * m.exp[i];
    if (best < 0 || w < best) best = w;
  }
  return best;
}

/// Quadrics of P^3 whose dehomogenisation at x0 = 1 has weighted order at
/// least `order` for weights on (x1, x2, x3). The forms are returned in the
/// given coordinates.
inline std::vector<MultiPoly> weighted_quadrics(const std::vector<int>& weights, int order) {
  std::vector<MultiPoly> out;
  for (const auto& m : monomials_of_degree(4, 2)) {
    int w = 0;
    for (int i = 1; i < 4; ++i) w += weights[i - 1] * m.exp[i];
    if (w >= order) out.push_back(MultiPoly::term(4, m, 1));
  }
  return out;
}

/// Cubic involution of T at a smooth point p: tau(q) = B(q) p - A(q) q where
/// T(p + t q) = t A(q) + t^2 B(q) + t^3 T(q).
inline RationalMap cubic_involution(const MultiPoly& t, const ProjPoint& p) {
  const int n = t.nvars();
  if (t.total_degree() != 3 || !t.is_homogeneous())
    throw InvalidInput("cubic_involution: cubic form expected");
  if (!vanishes_at(t, p)) throw InvalidInput("cubic_involution: point not on the cubic");
  auto grad = partials(t);
  MultiPoly a(n);
  bool smooth = false;
  for (int i = 0; i < n; ++i) {
    Scalar v = grad[i].evaluate(p.coords());
    if (v != 0) smooth = true;
    a += MultiPoly::variable(n, i) * v;
  }
  if (!smooth) throw InvalidInput("cubic_involution: point is singular on the cubic");
  MultiPoly b(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar h = derivative(grad[i], j).evaluate(p.coords());
      if (h != 0) b += MultiPoly::variable(n, i) * MultiPoly::variable(n, j) * (h / 2);
    }
  if (a.is_zero() && b.is_zero()) throw InvalidInput("cubic_involution: degenerate");
  std::vector<MultiPoly> forms;
  for (int i = 0; i < n; ++i)
    forms.push_back(b * p[i] - a * MultiPoly::variable(n, i));
  return RationalMap(n - 1, forms, false);
}

/// Section x -> [x Q(x) : -F3(x)] of the projection of T = (x_{n+1} Q + F3)
/// from its vertex [0:...:0:1].
inline RationalMap cubic_section(const MultiPoly& f3, const MultiPoly& q) {
  const int n = f3.nvars();
  std::vector<MultiPoly> forms;
  for (int i = 0; i < n; ++i) forms.push_back(MultiPoly::variable(n, i) * q);
  forms.push_back(-f3);
  return RationalMap(n - 1, forms, false);
}

/// The cubic T = x_{n+1} Q + F3 in one more variable.
inline MultiPoly cubic_cone_lift(const MultiPoly& f3, const MultiPoly& q) {
  const int n = f3.nvars();
  std::vector<MultiPoly> up;
  for (int i = 0; i < n; ++i) up.push_back(MultiPoly::variable(n + 1, i));
  return MultiPoly::variable(n + 1, n) * substitute(q, up) + substitute(f3, up);
}

struct Stabilizer {
  RationalMap omega;          // P^n --> P^n
  MultiPoly lifted_cubic;     // T
  ProjPoint center;           // p on T
  bool preserves_x = false;   // image of X equals X, by elimination
  int moved_off_x = 0;        // sample points off X with omega(q) != q
  int moved_on_x = 0;         // sample points of X with omega(q) != q
};

/// omega = pi o tau_p o sigma for X = (F3 = 0) and T = (x_{n+1} Q + F3 = 0).
inline RationalMap cubic_stabilizer_map(const MultiPoly& f3, const MultiPoly& q,
                                        const ProjPoint& p) {
  const int n = f3.nvars();
  if (!vanishes_at(f3, p)) throw InvalidInput("cubic_stabilizer: point not on X");
  MultiPoly t = cubic_cone_lift(f3, q);
  std::vector<Scalar> lifted = p.coords();
  lifted.push_back(0);
  RationalMap tau = cubic_involution(t, ProjPoint(lifted));
  RationalMap sigma = cubic_section(f3, q);
  std::vector<MultiPoly> drop;
  for (int i = 0; i < n; ++i) drop.push_back(MultiPoly::variable(n + 1, i));
  RationalMap pi(n, drop);
  return sigma.then(tau).then(pi);
}

/// Verifies omega(X) = X by elimination and counts sample points moved by
/// omega, on and off X.
inline Stabilizer verify_cubic_stabilizer(const MultiPoly& f3, const MultiPoly& q, const ProjPoint& p,
                                          Rng& rng, int samples = 12) {
  Stabilizer s;
  s.omega = cubic_stabilizer_map(f3, q, p);
  s.lifted_cubic = cubic_cone_lift(f3, q);
  std::vector<Scalar> lifted = p.coords();
  lifted.push_back(0);
  s.center = ProjPoint(lifted);
  HomIdeal x(f3.nvars(), {f3});
  s.preserves_x = image_ideal(s.omega, x).same_as(x);
  const int n = f3.nvars();
  for (const auto& pt : sample_points(f3, samples, rng)) {
    auto im = s.omega.apply(pt);
    if (im && !(*im == pt)) ++s.moved_on_x;
  }
  for (int i = 0; i < 4 * samples && s.moved_off_x < samples; ++i) {
    std::vector<Scalar> c(n);
    for (auto& v : c) v = rng.small_scalar(4);
    if (std::all_of(c.begin(), c.end(), [](const Scalar& v) { return v == 0; })) continue;
    ProjPoint pt(c);
    if (vanishes_at(f3, pt)) continue;
    auto im = s.omega.apply(pt);
    if (im && !(*im == pt)) ++s.moved_off_x;
  }
  return s;
}

/// Coordinates adapted to a double point with an infinitely near double
/// line: p goes to e0, the tangent cone becomes x1^2 and, for a = 2, the
/// kernel cubic becomes a multiple of x2^3.
struct AdaptedFrame {
  Matrix to_frame;   // y = to_frame * x
  MultiPoly form;    // F in the y coordinates
  Scalar square;     // coefficient of y0^2 y1^2
  MultiPoly mixed;   // Q(y2, y3): the y0 y1 Q part of F
};

inline AdaptedFrame adapted_frame(const MultiPoly& f, const ProjPoint& p, bool rotate_cube) {
  LinearChange a = LinearChange::sending_to_coordinate_point(p, 0);
  MultiPoly g = a.transform(f);
  MultiPoly local = local_expansion(g, ProjPoint{1, 0, 0, 0});
  Matrix h = detail::hessian(local.homogeneous_part(2));
  if (rank(h) != 1) throw InvalidInput("adapted_frame: tangent cone is not a double plane");
  auto ker = kernel(h, 3);
  std::vector<Scalar> lead(3, 0);
  for (int i = 0; i < 3; ++i)
    if (std::any_of(h[i].begin(), h[i].end(), [](const Scalar& s) { return s != 0; })) {
      lead[i] = 1;
      break;
    }
  Matrix cols{lead, ker[0], ker[1]};
  if (rotate_cube) {
    MultiPoly l2 = detail::linear_substitute(local, cols);
    const int n = 3;
    MultiPoly cubic = substitute(l2.homogeneous_part(3),
                                 {MultiPoly(n), MultiPoly::variable(n, 1), MultiPoly::variable(n, 2)});
    UPoly affine = UPoly::from_multipoly(
        substitute(cubic, {MultiPoly(1), MultiPoly::constant(1, 1), MultiPoly::variable(1, 0)}), 0);
    if (affine.degree() == 3) {
      Scalar r = -affine.coeffs()[2] / (3 * affine.coeffs()[3]);
      std::vector<Scalar> nv(3), nw(3);
      for (int i = 0; i < 3; ++i) {
        nv[i] = cols[2][i];
        nw[i] = cols[1][i] + r * cols[2][i];
      }
      cols[1] = nv;
      cols[2] = nw;
    }
  }
  // old local coordinate i = sum_j cols[j][i] * new_j; extend by x0 -> x0
  Matrix m = identity_matrix(4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i + 1][j + 1] = cols[j][i];
  Matrix minv = inverse(m);
  AdaptedFrame fr;
  fr.to_frame = Matrix(4, std::vector<Scalar>(4, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) fr.to_frame[i][j] += minv[i][k] * a.matrix()[k][j];
  fr.form = substitute(f, LinearChange::linear_forms(inverse(fr.to_frame), 4));
  Monomial sq;
  sq.exp[0] = 2;
  sq.exp[1] = 2;
  fr.square = fr.form.coefficient(sq);
  MultiPoly mixed(4);
  for (const auto& [mon, c] : fr.form.terms())
    if (mon.exp[0] == 1 && mon.exp[1] == 1) mixed += MultiPoly::term(4, mon / (Monomial::variable(0) * Monomial::variable(1)), c);
  fr.mixed = substitute(mixed, {MultiPoly(4), MultiPoly(4), MultiPoly::variable(4, 2), MultiPoly::variable(4, 3)});
  return fr;
}

/// The system Lambda_a of quadrics with multiplicity >= a+1 along the
/// valuation of the infinitely near double line at p, expressed in the
/// original coordinates. a = 1 for TYPE1 points, a = 2 for TYPE2 points.
inline RationalMap lambda_map(const MultiPoly& f, int a, const ProjPoint& p = ProjPoint{1, 0, 0, 0}) {
  if (a != 1 && a != 2) throw InvalidInput("lambda_map: a must be 1 or 2");
  SingularPointReport rep = classify_point(f, p);
  bool ok = a == 1 ? (rep.cls == SingClass::kType1 || rep.cls == SingClass::kSimpleElliptic)
                   : rep.cls == SingClass::kType2;
  if (!ok) throw InvalidInput("lambda_map: point of type " + rep.tag() + " does not match a = " + std::to_string(a));
  AdaptedFrame fr = adapted_frame(f, p, a == 2);
  std::vector<MultiPoly> quadrics;
  if (a == 1) {
    quadrics = weighted_quadrics({2, 1, 1}, 2);
  } else {
    // u' = x1 + Q(x2, x3) / (2c x0) is the coordinate of weight 3
    MultiPoly x0x1 = MultiPoly::variable(4, 0) * MultiPoly::variable(4, 1);
    for (const auto& q : weighted_quadrics({3, 2, 1}, 3))
      quadrics.push_back(q == x0x1 ? q + fr.mixed * (Scalar(1) / (2 * fr.square)) : q);
  }
  auto to_y = LinearChange::linear_forms(fr.to_frame, 4);
  std::vector<MultiPoly> forms;
  for (const auto& q : quadrics) forms.push_back(substitute(q, to_y));
  return RationalMap(3, forms).with_frame(fr.to_frame, quadrics);
}

}  // namespace cremona
