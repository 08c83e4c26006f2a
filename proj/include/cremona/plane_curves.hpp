#pragma once

// Plane curves: embedded resolution by point blow-ups, delta invariant and
// genus, adjoint systems adj_{n,m}, and the finite Coolidge grid test.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cremona/ideal.hpp"
#include "cremona/linalg.hpp"
#include "cremona/projective.hpp"
#include "cremona/univariate.hpp"

namespace cremona {

/// How a child point sits on the exceptional curve of its parent, in the
/// parent's local coordinates (s, t):
///   kAffineSlope : s = s', t = s'(t' + slope), exceptional curve s' = 0
///   kVertical    : s = s't', t = t',           exceptional curve t' = 0
enum class ChartKind { kAffineSlope, kVertical };

struct ClusterPoint {
  int level = 0;
  /// Level 0: affine coordinates of the point in the chart of its first
  /// nonzero coordinate. Level > 0: (0, slope) or (0, 0) for a vertical
  /// direction, in the parent's local coordinates.
  std::pair<Scalar, Scalar> chart_coords;
  int parent = -1;
  int multiplicity = 1;
  std::vector<int> proximate_to;

  ProjPoint origin;  // level 0 only
  ChartKind chart = ChartKind::kAffineSlope;
  Scalar slope = 0;
};

struct Cluster {
  std::vector<ClusterPoint> points;
  int degree = 0;
  /// Points p with m_p < sum of multiplicities of points proximate to p.
  std::vector<int> proximity_violations;
};

namespace detail {

inline MultiPoly chart_substitute(const MultiPoly& g, ChartKind kind, const Scalar& slope) {
  MultiPoly s = MultiPoly::variable(2, 0), t = MultiPoly::variable(2, 1);
  if (kind == ChartKind::kAffineSlope) return substitute(g, {s, s * (t + MultiPoly::constant(2, slope))});
  return substitute(g, {s * t, t});
}

inline int exceptional_var(ChartKind kind) { return kind == ChartKind::kAffineSlope ? 0 : 1; }

/// Divides out the maximal power of the exceptional variable.
inline MultiPoly strict_part(const MultiPoly& g, int var) {
  if (g.is_zero()) return g;
  Monomial content = monomial_content(g);
  return divide_by_monomial(g, Monomial::variable(var, content.exp[var]));
}

inline MultiPoly divide_exceptional(const MultiPoly& g, int var, int power) {
  return divide_by_monomial(g, Monomial::variable(var, power));
}

inline bool tangent(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly la = a.homogeneous_part(1), lb = b.homogeneous_part(1);
  Monomial s = Monomial::variable(0), t = Monomial::variable(1);
  return la.coefficient(s) * lb.coefficient(t) == la.coefficient(t) * lb.coefficient(s);
}

struct Exceptional {
  int owner;
  MultiPoly equation;
};

class Resolver {
 public:
  explicit Resolver(Cluster& out) : out_(out) {}

  void blow_up(int index, const MultiPoly& g, const std::vector<Exceptional>& through) {
    const int m = g.min_degree();
    MultiPoly cone = g.homogeneous_part(m);
    struct Direction {
      ChartKind kind;
      Scalar slope;
    };
    std::vector<Direction> dirs;
    // tangent cone restricted to s = 1 gives the slopes t/s; the missing
    // degree is the multiplicity of the vertical direction
    UPoly affine = UPoly::from_multipoly(
        substitute(cone, {MultiPoly::constant(1, 1), MultiPoly::variable(1, 0)}), 0);
    if (affine.degree() < m) dirs.push_back({ChartKind::kVertical, 0});
    for (const auto& [mult, factor] : squarefree_decomposition(affine)) {
      auto roots = rational_roots(factor);
      if (mult >= 2 && static_cast<int>(roots.size()) < factor.degree())
        throw UnsupportedFieldExtension("infinitely near point with irrational coordinates");
      for (const auto& r : roots) dirs.push_back({ChartKind::kAffineSlope, r});
    }
    for (const auto& d : dirs) {
      const int ev = exceptional_var(d.kind);
      MultiPoly h = divide_exceptional(chart_substitute(g, d.kind, d.slope), ev, m);
      std::vector<Exceptional> next;
      next.push_back({index, MultiPoly::variable(2, ev)});
      for (const auto& e : through) {
        MultiPoly te = strict_part(chart_substitute(e.equation, d.kind, d.slope), ev);
        if (te.min_degree() >= 1) next.push_back({e.owner, te});
      }
      const int mh = h.min_degree();
      if (mh == 0) continue;
      bool needs = mh >= 2 || next.size() >= 2;
      for (const auto& e : next)
        if (!needs && tangent(h, e.equation)) needs = true;
      if (!needs) continue;
      ClusterPoint child;
      child.level = out_.points[index].level + 1;
      child.parent = index;
      child.multiplicity = mh;
      child.chart = d.kind;
      child.slope = d.slope;
      child.chart_coords = {Scalar(0), d.kind == ChartKind::kAffineSlope ? d.slope : Scalar(0)};
      for (const auto& e : next) child.proximate_to.push_back(e.owner);
      out_.points.push_back(child);
      blow_up(static_cast<int>(out_.points.size()) - 1, h, next);
    }
  }

 private:
  Cluster& out_;
};

inline HomIdeal jacobian_scheme(const MultiPoly& f) {
  std::vector<MultiPoly> gens{f};
  for (const auto& p : partials(f))
    if (!p.is_zero()) gens.push_back(p);
  return HomIdeal(f.nvars(), gens);
}

}  // namespace detail

/// Rational singular points of a reduced plane curve; throws when some
/// singular point is not defined over Q.
inline std::vector<ProjPoint> plane_singular_points(const MultiPoly& f) {
  if (f.nvars() != 3 || !f.is_homogeneous() || f.is_zero())
    throw InvalidInput("plane curve must be a nonzero form in 3 variables");
  HomIdeal jac = detail::jacobian_scheme(f);
  DimDegree dd = dim_degree(jac);
  if (dd.dim >= 1) throw InvalidInput("plane curve is not squarefree");
  if (dd.dim < 0) return {};
  RationalPoints pts = rational_points_zero_dim(jac);
  long tjurina_total = 0;
  for (const auto& p : pts.points) {
    MultiPoly g = local_expansion(f, p);
    auto tau = local_colength({g, derivative(g, 0), derivative(g, 1)}, 40);
    if (!tau) throw Undetermined("local Tjurina number did not stabilise");
    tjurina_total += *tau;
  }
  if (tjurina_total != dd.degree)
    throw UnsupportedFieldExtension("plane curve has singular points with irrational coordinates");
  return pts.points;
}

inline Cluster resolve_cluster(const MultiPoly& f) {
  Cluster c;
  c.degree = f.total_degree();
  detail::Resolver resolver(c);
  for (const auto& p : plane_singular_points(f)) {
    MultiPoly g = local_expansion(f, p);
    ClusterPoint root;
    root.level = 0;
    root.origin = p;
    root.multiplicity = g.min_degree();
    int j0 = p.first_nonzero(), k = 0;
    Scalar a[2];
    for (int i = 0; i < 3; ++i)
      if (i != j0) a[k++] = p[i];
    root.chart_coords = {a[0], a[1]};
    c.points.push_back(root);
    resolver.blow_up(static_cast<int>(c.points.size()) - 1, g, {});
  }
  std::vector<int> proximate_sum(c.points.size(), 0);
  for (const auto& q : c.points)
    for (int p : q.proximate_to) proximate_sum[p] += q.multiplicity;
  for (std::size_t i = 0; i < c.points.size(); ++i)
    if (c.points[i].multiplicity < proximate_sum[i])
      c.proximity_violations.push_back(static_cast<int>(i));
  return c;
}

struct DeltaGenus {
  long delta = 0;
  long genus = 0;
};

inline DeltaGenus delta_genus(const Cluster& c) {
  DeltaGenus r;
  for (const auto& p : c.points) r.delta += static_cast<long>(p.multiplicity) * (p.multiplicity - 1) / 2;
  long d = c.degree;
  r.genus = (d - 1) * (d - 2) / 2 - r.delta;
  if (r.genus < 0) throw InvalidInput("negative genus: the curve is reducible");
  return r;
}

inline DeltaGenus delta_genus(const MultiPoly& f) { return delta_genus(resolve_cluster(f)); }

/// Projective dimension of adj_{n,m}: plane curves of degree n*d - 3m with
/// virtual multiplicity max(0, n*m_p - m) at every cluster point.
inline int adjoint_dim(const Cluster& c, int n, int m) {
  if (n < 1 || m < n) throw InvalidInput("adjoint_dim needs 1 <= n <= m");
  const int k = n * c.degree - 3 * m;
  if (k < 0) return -1;
  auto mons = monomials_of_degree(3, k);
  const int unknowns = static_cast<int>(mons.size());

  // local[i][j]: the j-th basis curve, expanded at cluster point i and
  // carried through the blow-up charts (already divided by the virtual
  // multiplicities of the ancestors)
  std::vector<std::vector<MultiPoly>> local(c.points.size());
  Matrix rows;
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const auto& pt = c.points[i];
    std::vector<MultiPoly> polys;
    if (pt.parent < 0) {
      for (const auto& mon : mons) polys.push_back(local_expansion(MultiPoly::term(3, mon, 1), pt.origin));
    } else {
      const auto& parent = c.points[pt.parent];
      const int v = std::max(0, n * parent.multiplicity - m);
      const int ev = detail::exceptional_var(pt.chart);
      for (const auto& g : local[pt.parent]) {
        MultiPoly high = g - g.truncated(v);
        polys.push_back(detail::divide_exceptional(detail::chart_substitute(high, pt.chart, pt.slope), ev, v));
      }
    }
    const int v = std::max(0, n * pt.multiplicity - m);
    for (int d = 0; d < v; ++d)
      for (const auto& mon : monomials_of_degree(2, d)) {
        std::vector<Scalar> row(unknowns);
        bool nonzero = false;
        for (int j = 0; j < unknowns; ++j) {
          row[j] = polys[j].coefficient(mon);
          if (row[j] != 0) nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    local[i] = std::move(polys);
  }
  int r = rows.empty() ? 0 : rank(rows);
  return unknowns - r - 1;
}

inline int adjoint_dim(const MultiPoly& f, int n, int m) {
  return adjoint_dim(resolve_cluster(f), n, m);
}

struct GridVerdict {
  bool passes = true;
  int n = 0, m = 0;  // first failing pair when !passes
  int bound = 0;
  std::string to_string() const {
    return passes ? "PASSES_GRID" : "FAILS(" + std::to_string(n) + "," + std::to_string(m) + ")";
  }
};

inline GridVerdict coolidge_grid_test(const Cluster& c, int bound = 6) {
  GridVerdict v;
  v.bound = bound;
  for (int n = 1; n <= bound; ++n)
    for (int m = n; m <= 2 * bound; ++m)
      if (adjoint_dim(c, n, m) != -1) {
        v.passes = false;
        v.n = n;
        v.m = m;
        return v;
      }
  return v;
}

inline GridVerdict coolidge_grid_test(const MultiPoly& f, int bound = 6) {
  return coolidge_grid_test(resolve_cluster(f), bound);
}

}  // namespace cremona
