#pragma once

// Homogeneous ideals and the geometric questions asked of them: elimination,
// saturation, dimension and degree from the Hilbert series of the lead-term
// ideal, rational points of zero-dimensional schemes, and local colengths.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cremona/groebner.hpp"
#include "cremona/projective.hpp"
#include "cremona/univariate.hpp"

namespace cremona {

class HomIdeal {
 public:
  HomIdeal() : HomIdeal(1, {}) {}

  HomIdeal(int nvars, std::vector<MultiPoly> gens) : nvars_(nvars) {
    for (auto& g : gens) {
      if (g.nvars() != nvars) throw InvalidInput("HomIdeal: generator arity mismatch");
      if (g.is_zero()) continue;
      if (!g.is_homogeneous()) throw InvalidInput("HomIdeal: generator is not homogeneous");
      gens_.push_back(g.primitive());
    }
  }

  int nvars() const { return nvars_; }
  const std::vector<MultiPoly>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }

  /// Reduced Groebner basis for `ord`, computed once and shared by copies.
  const GroebnerBasis& groebner(const MonomialOrder& ord) const {
    std::lock_guard lock(cache_->mutex);
    for (const auto& gb : cache_->bases)
      if (gb.order == ord) return gb;
    if (gens_.empty()) {
      cache_->bases.push_back(GroebnerBasis{ord, {}, {}, 0});
    } else {
      cache_->bases.push_back(groebner_basis(gens_, ord));
    }
    return cache_->bases.back();
  }

  const GroebnerBasis& groebner() const { return groebner(MonomialOrder::grevlex(nvars_)); }

  bool contains(const MultiPoly& f) const {
    if (f.is_zero()) return true;
    if (gens_.empty()) return false;
    return reduces_to_zero(f, groebner());
  }

  bool contains(const HomIdeal& other) const {
    for (const auto& g : other.generators())
      if (!contains(g)) return false;
    return true;
  }

  bool same_as(const HomIdeal& other) const {
    return contains(other) && other.contains(*this);
  }

  bool is_unit() const { return !gens_.empty() && groebner().is_unit(); }

  /// The ideal with the reduced grevlex basis as generators.
  HomIdeal canonical() const {
    HomIdeal out(nvars_, groebner().polys);
    return out;
  }

  HomIdeal plus(const std::vector<MultiPoly>& more) const {
    std::vector<MultiPoly> g = gens_;
    g.insert(g.end(), more.begin(), more.end());
    return HomIdeal(nvars_, std::move(g));
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (i) s += ", ";
      s += gens_[i].to_string();
    }
    return s + ")";
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::vector<GroebnerBasis> bases;
  };

  int nvars_;
  std::vector<MultiPoly> gens_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Polynomials free of the first `drop` variables in a basis of the ideal
/// generated by `gens`, re-expressed in the remaining variables. The optional
/// weights grade the ring so that weighted-homogeneous input stays so.
inline std::vector<MultiPoly> eliminate(const std::vector<MultiPoly>& gens, int drop,
                                        const std::vector<int>& weights = {}) {
  if (gens.empty()) return {};
  const int n = gens[0].nvars();
  if (drop < 0 || drop >= n) throw InvalidInput("eliminate: bad block size");
  std::vector<MultiPoly> basis;
  if (drop == 0) {
    auto ord = MonomialOrder::grevlex(n);
    if (!weights.empty()) ord = ord.with_weights(weights);
    basis = groebner_basis(gens, ord).polys;
  } else {
    auto ord = MonomialOrder::block_elimination(n, drop);
    if (!weights.empty()) ord = ord.with_weights(weights);
    basis = groebner_basis(gens, ord).polys;
  }
  std::vector<MultiPoly> images;
  for (int i = 0; i < n; ++i)
    images.push_back(i < drop ? MultiPoly(n - drop) : MultiPoly::variable(n - drop, i - drop));
  std::vector<MultiPoly> out;
  for (const auto& g : basis) {
    bool free = true;
    for (const auto& [m, c] : g.terms())
      for (int i = 0; i < drop && free; ++i)
        if (m.exp[i]) free = false;
    if (free) out.push_back(substitute(g, images));
  }
  return out;
}

inline HomIdeal eliminate(const HomIdeal& ideal, int drop) {
  return HomIdeal(ideal.nvars() - drop, eliminate(ideal.generators(), drop));
}

/// (I : f^inf) by adjoining t with 1 - t f and eliminating t.
inline HomIdeal saturate(const HomIdeal& ideal, const MultiPoly& f) {
  if (f.is_zero()) throw InvalidInput("saturate: zero polynomial");
  if (ideal.is_zero()) return ideal;
  const int n = ideal.nvars();
  if (n + 1 > kMaxVars) throw InvalidInput("saturate: too many variables");
  std::vector<MultiPoly> shift;
  for (int i = 0; i < n; ++i) shift.push_back(MultiPoly::variable(n + 1, i + 1));
  std::vector<MultiPoly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(substitute(g, shift));
  gens.push_back(MultiPoly::constant(n + 1, 1) -
                 MultiPoly::variable(n + 1, 0) * substitute(f, shift));
  auto out = eliminate(gens, 1);
  return HomIdeal(n, out);
}

/// (I : l^inf) for a linear form l. After a change of coordinates making l
/// the last variable, a grevlex basis divided by the largest powers of that
/// variable is a basis of the saturation.
inline HomIdeal saturate_linear(const HomIdeal& ideal, const MultiPoly& l) {
  if (!l.is_homogeneous() || l.total_degree() != 1)
    throw InvalidInput("saturate_linear: linear form expected");
  if (ideal.is_zero()) return ideal;
  const int n = ideal.nvars();
  // matrix whose last row is l; pick the other rows among unit vectors
  Matrix m(n, std::vector<Scalar>(n, 0));
  std::vector<Scalar> lrow(n, 0);
  for (const auto& [mono, c] : l.terms())
    for (int i = 0; i < n; ++i)
      if (mono.exp[i]) lrow[i] = c;
  int pivot = 0;
  while (lrow[pivot] == 0) ++pivot;
  int r = 0;
  for (int i = 0; i < n; ++i) {
    if (i == pivot) continue;
    m[r++][i] = 1;
  }
  m[n - 1] = lrow;
  // new coordinates y = M x; forms transform by F -> F o M^{-1}
  LinearChange change(m);
  std::vector<MultiPoly> moved;
  for (const auto& g : ideal.generators()) moved.push_back(change.transform(g));
  auto gb = groebner_basis(moved, MonomialOrder::grevlex(n));
  std::vector<MultiPoly> sat;
  for (const auto& g : gb.polys) {
    Monomial content = monomial_content(g);
    Monomial last = Monomial::variable(n - 1, content.exp[n - 1]);
    sat.push_back(divide_by_monomial(g, last));
  }
  LinearChange back = change.inverse();
  std::vector<MultiPoly> out;
  for (const auto& g : sat) out.push_back(back.transform(g));
  return HomIdeal(n, out);
}

/// (I : m^inf) for the irrelevant ideal m, computed as the saturation by a
/// seeded random linear form and confirmed by a second, independent form.
inline HomIdeal saturate_irrelevant(const HomIdeal& ideal, std::uint64_t seed = 7) {
  if (ideal.is_zero() || ideal.is_unit()) return ideal;
  Rng rng(seed);
  const int n = ideal.nvars();
  auto random_form = [&] {
    MultiPoly l(n);
    for (int i = 0; i < n; ++i) l += MultiPoly::variable(n, i) * rng.nonzero_scalar(7);
    return l;
  };
  HomIdeal first = saturate_linear(ideal, random_form());
  for (int attempt = 0; attempt < 6; ++attempt) {
    HomIdeal second = saturate_linear(ideal, random_form());
    if (first.same_as(second)) return first.canonical();
    // the larger one has lost an embedded or isolated component; keep the smaller
    if (first.contains(second)) first = second;
  }
  return first.canonical();
}

/// Numerator of the Hilbert series of S/M for a monomial ideal M, as
/// coefficients of powers of t.
namespace detail {

using HPoly = std::vector<Integer>;

inline HPoly hpoly_sub(HPoly a, const HPoly& b, int shift) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= b[i];
  return a;
}

inline std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(),
            [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  std::vector<Monomial> out;
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& h : out)
      if (h.divides(g)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(g);
  }
  return out;
}

inline HPoly hilbert_numerator(std::vector<Monomial> gens, int nvars) {
  gens = minimalize(std::move(gens));
  // base case: pairwise coprime generators give a product of (1 - t^deg)
  int pivot = -1;
  for (std::size_t i = 0; i < gens.size() && pivot < 0; ++i)
    for (std::size_t j = i + 1; j < gens.size() && pivot < 0; ++j)
      if (!Monomial::coprime(gens[i], gens[j]))
        for (int v = 0; v < nvars; ++v)
          if (gens[i].exp[v] && gens[j].exp[v]) {
            pivot = v;
            break;
          }
  if (pivot < 0) {
    HPoly num{1};
    for (const auto& g : gens) num = hpoly_sub(num, num, g.degree());
    return num;
  }
  // N(M) = N(M + (x)) + t * N(M : x)
  std::vector<Monomial> plus = gens;
  plus.push_back(Monomial::variable(pivot));
  std::vector<Monomial> quot;
  for (const auto& g : gens) {
    Monomial q = g;
    if (q.exp[pivot]) --q.exp[pivot];
    quot.push_back(q);
  }
  HPoly a = hilbert_numerator(std::move(plus), nvars);
  HPoly b = hilbert_numerator(std::move(quot), nvars);
  HPoly r = a;
  if (r.size() < b.size() + 1) r.resize(b.size() + 1, 0);
  for (std::size_t i = 0; i < b.size(); ++i) r[i + 1] += b[i];
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

}  // namespace detail

struct DimDegree {
  int dim;     // projective dimension, -1 for the empty scheme
  long degree; // 0 for the empty scheme
  friend bool operator==(const DimDegree&, const DimDegree&) = default;
};

/// Dimension and degree of the projective scheme from the Hilbert series of
/// the lead-term ideal; only the leading monomials of a Groebner basis are used.
inline DimDegree dim_degree_from_leads(const std::vector<Monomial>& leads, int nvars) {
  for (const auto& m : leads)
    if (m.is_one()) return {-1, 0};
  detail::HPoly num = detail::hilbert_numerator(leads, nvars);
  int k = 0;
  // divide by (1 - t) while the numerator vanishes at t = 1
  for (;;) {
    Integer at_one = 0;
    for (const auto& c : num) at_one += c;
    if (at_one != 0 || num.empty()) break;
    // synthetic division by (1 - t): q_i = sum_{j<=i} a_j
    detail::HPoly q(num.size() - 1);
    Integer acc = 0;
    for (std::size_t i = 0; i + 1 < num.size(); ++i) {
      acc += num[i];
      q[i] = acc;
    }
    num = std::move(q);
    ++k;
  }
  int affine_dim = nvars - k;
  if (affine_dim <= 0) return {-1, 0};
  Integer deg = 0;
  for (const auto& c : num) deg += c;
  return {affine_dim - 1, deg.get_si()};
}

inline DimDegree dim_degree(const HomIdeal& ideal) {
  if (ideal.is_zero()) return {ideal.nvars() - 1, 1};
  const auto& gb = ideal.groebner();
  return dim_degree_from_leads(gb.leads, ideal.nvars());
}

struct RationalPoints {
  std::vector<ProjPoint> points;  // sorted, distinct
  bool irrational_remaining = false;
};

namespace detail {

// Minimal polynomial of x_var in the finite-dimensional algebra k[x]/(gb).
inline UPoly minimal_polynomial(const GroebnerBasis& gb, int var, int nvars) {
  std::vector<MultiPoly> powers{normal_form(MultiPoly::constant(nvars, 1), gb)};
  const MultiPoly x = MultiPoly::variable(nvars, var);
  for (;;) {
    powers.push_back(normal_form(powers.back() * x, gb));
    CoefficientTable t = coefficient_table(powers);
    Matrix cols(t.monomials.size(), std::vector<Scalar>(powers.size(), 0));
    for (std::size_t i = 0; i < powers.size(); ++i)
      for (std::size_t r = 0; r < t.monomials.size(); ++r) cols[r][i] = t.rows[i][r];
    auto ker = kernel(cols, static_cast<int>(powers.size()));
    if (!ker.empty()) return UPoly(ker.front()).monic();
    if (powers.size() > 4096) throw InvalidInput("rational points: system is not zero-dimensional");
  }
}

// Affine solutions of a zero-dimensional system given by a Groebner basis
// in k variables: candidate coordinates are the rational roots of the
// minimal polynomial of each variable, and candidates are kept when every
// basis element vanishes.
inline void solve_affine(const GroebnerBasis& gb, int k,
                         std::vector<std::vector<Scalar>>& out, bool& irrational) {
  if (gb.is_unit()) return;
  std::vector<std::vector<Scalar>> candidates(k);
  for (int v = 0; v < k; ++v) {
    UPoly u = minimal_polynomial(gb, v, k);
    candidates[v] = rational_roots(u);
    UPoly sqfree = UPoly::divmod(u, UPoly::gcd(u, u.derivative())).first;
    if (sqfree.degree() > static_cast<int>(candidates[v].size())) irrational = true;
    if (candidates[v].empty()) return;
  }
  std::vector<Scalar> point(k);
  std::function<void(int)> choose = [&](int v) {
    if (v == k) {
      for (const auto& g : gb.polys)
        if (g.evaluate(point) != 0) return;
      out.push_back(point);
      return;
    }
    for (const auto& r : candidates[v]) {
      point[v] = r;
      choose(v + 1);
    }
  };
  choose(0);
}

// Setting the last variable to 1 in a homogeneous grevlex basis yields a
// grevlex basis of the affine chart.
inline GroebnerBasis dehomogenize_last(const GroebnerBasis& gb, int n) {
  GroebnerBasis out;
  out.order = MonomialOrder::grevlex(n - 1);
  std::vector<MultiPoly> images;
  for (int i = 0; i + 1 < n; ++i) images.push_back(MultiPoly::variable(n - 1, i));
  images.push_back(MultiPoly::constant(n - 1, 1));
  for (const auto& g : gb.polys) {
    MultiPoly a = substitute(g, images);
    if (a.is_zero()) continue;
    if (a.is_constant()) return GroebnerBasis{out.order, {MultiPoly::constant(n - 1, 1)}, {Monomial{}}, 0};
    out.polys.push_back(a);
  }
  for (const auto& a : out.polys) {
    Monomial lead = a.terms().front().first;
    for (const auto& [m, c] : a.terms())
      if (out.order.compare(m, lead) > 0) lead = m;
    out.leads.push_back(lead);
  }
  return out;
}

}  // namespace detail

/// All rational points of a zero-dimensional projective scheme. Points are
/// read in the chart x_{n-1} = 1, after a linear change of coordinates when
/// the scheme meets the hyperplane x_{n-1} = 0.
inline RationalPoints rational_points_zero_dim(const HomIdeal& ideal) {
  const int n = ideal.nvars();
  DimDegree dd = dim_degree(ideal);
  if (dd.dim > 0) throw InvalidInput("rational_points_zero_dim: positive-dimensional scheme");
  RationalPoints res;
  if (dd.dim < 0) return res;
  if (n == 1) return res;
  Rng rng(0x5eed);
  LinearChange change = LinearChange::identity(n - 1);
  HomIdeal moved = ideal;
  for (int attempt = 0;; ++attempt) {
    if (dim_degree(moved.plus({MultiPoly::variable(n, n - 1)})).dim < 0) break;
    if (attempt == 64) throw Undetermined("rational points: no good chart found");
    // first swaps of the last coordinate, then a random last row
    Matrix m = identity_matrix(n);
    if (attempt + 1 < n) {
      std::swap(m[attempt], m[n - 1]);
    } else {
      for (int j = 0; j < n; ++j) m[n - 1][j] = rng.small_scalar(1 + attempt / 8);
      if (m[n - 1][n - 1] == 0) m[n - 1][n - 1] = 1;
    }
    change = LinearChange(m);
    std::vector<MultiPoly> gens;
    for (const auto& g : ideal.generators()) gens.push_back(change.transform(g));
    moved = HomIdeal(n, gens);
  }
  GroebnerBasis affine = detail::dehomogenize_last(moved.groebner(), n);
  std::vector<std::vector<Scalar>> sols;
  detail::solve_affine(affine, n - 1, sols, res.irrational_remaining);
  LinearChange back = change.inverse();
  for (auto& s : sols) {
    s.push_back(1);
    res.points.push_back(back.apply(ProjPoint(s)));
  }
  std::sort(res.points.begin(), res.points.end());
  res.points.erase(std::unique(res.points.begin(), res.points.end()), res.points.end());
  return res;
}

/// Number of standard monomials of a zero-dimensional Groebner basis.
inline long count_standard_monomials(const std::vector<Monomial>& leads, int nvars,
                                     int max_degree) {
  long count = 0;
  for (int d = 0; d <= max_degree; ++d) {
    long at_d = 0;
    for (const auto& m : monomials_of_degree(nvars, d)) {
      bool standard = true;
      for (const auto& l : leads)
        if (l.divides(m)) {
          standard = false;
          break;
        }
      if (standard) ++at_d;
    }
    if (at_d == 0) break;
    count += at_d;
  }
  return count;
}

/// dim_Q of O_0 / (gens) for the local ring at the origin, or nullopt if the
/// value has not stabilised by truncation order `max_order`. Uses
/// colength(J + m^k), computed as the corank of the matrix of all products
/// x^a * g modulo m^k; two consecutive equal values prove m^k lies in J.
inline std::optional<long> local_colength(const std::vector<MultiPoly>& gens,
                                          int max_order = 12) {
  if (gens.empty()) return std::nullopt;
  const int n = gens[0].nvars();
  long previous = -1;
  for (int k = 1; k <= max_order + 1; ++k) {
    std::vector<Monomial> cols;
    for (int d = 0; d < k; ++d)
      for (const auto& m : monomials_of_degree(n, d)) cols.push_back(m);
    std::sort(cols.begin(), cols.end(), storage_before);
    auto column_of = [&](const Monomial& m) {
      return std::lower_bound(cols.begin(), cols.end(), m, storage_before) - cols.begin();
    };
    // pivots[c]: reduced row with leading column c (dense, normalized to 1)
    std::vector<std::vector<Scalar>> pivots(cols.size());
    long rank = 0;
    const long total = static_cast<long>(cols.size());
    for (int d = 0; d < k && rank < total; ++d)
      for (const auto& mult : monomials_of_degree(n, d)) {
        for (const auto& g : gens) {
          if (rank == total) break;
          std::vector<Scalar> row(cols.size(), 0);
          bool any = false;
          for (const auto& [m, c] : g.terms()) {
            Monomial t = m * mult;
            if (t.degree() >= k) continue;
            row[column_of(t)] = c;
            any = true;
          }
          if (!any) continue;
          for (std::size_t c = 0; c < row.size(); ++c) {
            if (row[c] == 0) continue;
            if (pivots[c].empty()) {
              Scalar inv = 1 / row[c];
              for (std::size_t j = c; j < row.size(); ++j) row[j] *= inv;
              pivots[c] = std::move(row);
              ++rank;
              break;
            }
            Scalar f = row[c];
            const auto& p = pivots[c];
            for (std::size_t j = c; j < row.size(); ++j)
              if (p[j] != 0) row[j] -= f * p[j];
          }
        }
      }
    long value = total - rank;
    if (value == previous) return value;
    previous = value;
  }
  return std::nullopt;
}

}  // namespace cremona
