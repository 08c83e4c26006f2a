#pragma once

// Points of projective space, linear coordinate changes, and local
// expansions of forms at a point.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cremona/linalg.hpp"
#include "cremona/poly.hpp"

namespace cremona {

/// Seeded generator shared by every "general choice" draw. Only the raw
/// mt19937_64 stream is used, so draws are reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) : engine_(seed), seed_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  Scalar small_scalar(int height = 5) { return Scalar(uniform(-height, height)); }

  Scalar nonzero_scalar(int height = 5) {
    for (;;) {
      auto v = uniform(-height, height);
      if (v != 0) return Scalar(v);
    }
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

class ProjPoint {
 public:
  ProjPoint() = default;
  explicit ProjPoint(std::vector<Scalar> coords) : coords_(std::move(coords)) {
    normalize();
  }
  ProjPoint(std::initializer_list<long> coords) {
    for (long c : coords) coords_.emplace_back(c);
    normalize();
  }

  /// Projective dimension n (the point has n+1 coordinates).
  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  const std::vector<Scalar>& coords() const { return coords_; }
  const Scalar& operator[](int i) const { return coords_[i]; }

  int first_nonzero() const {
    for (int i = 0; i <= dim(); ++i)
      if (coords_[i] != 0) return i;
    return -1;
  }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
    return a.coords_ < b.coords_;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += coords_[i].get_str();
    }
    return s + "]";
  }

 private:
  void normalize() {
    int k = first_nonzero();
    if (k < 0) throw InvalidInput("projective point with all coordinates zero");
    Scalar inv = 1 / coords_[k];
    for (auto& c : coords_) c *= inv;
  }

  std::vector<Scalar> coords_;
};

inline bool vanishes_at(const MultiPoly& f, const ProjPoint& p) {
  return f.evaluate(p.coords()) == 0;
}

/// Invertible linear change of coordinates of P^n. Points transform by
/// p -> M p; forms transform by F -> F o M^{-1}, so that V(F) maps to
/// V(transform(F)).
class LinearChange {
 public:
  explicit LinearChange(Matrix m) : m_(std::move(m)) {
    if (m_.empty() || m_.size() != m_[0].size())
      throw InvalidInput("LinearChange needs a square matrix");
    if (determinant(m_) == 0) throw InvalidInput("LinearChange is singular");
    inv_ = cremona::inverse(m_);
  }

  static LinearChange identity(int n) { return LinearChange(identity_matrix(n + 1)); }

  /// Random change with small integer entries (retries until invertible).
  static LinearChange random(int n, Rng& rng, int height = 3) {
    for (;;) {
      Matrix m(n + 1, std::vector<Scalar>(n + 1));
      for (auto& row : m)
        for (auto& e : row) e = rng.small_scalar(height);
      if (determinant(m) != 0) return LinearChange(m);
    }
  }

  /// Random change with M p = p (up to scaling).
  static LinearChange random_fixing(const ProjPoint& p, Rng& rng, int height = 3) {
    const int n = p.dim();
    LinearChange to_e = sending_to_coordinate_point(p, 0);
    for (;;) {
      // In coordinates where p = e0, any matrix with first column (1,0,...,0)
      // fixes the point.
      Matrix a(n + 1, std::vector<Scalar>(n + 1));
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
          a[i][j] = j == 0 ? Scalar(i == 0 ? 1 : 0) : rng.small_scalar(height);
      if (determinant(a) == 0) continue;
      return to_e.inverse().compose(LinearChange(a)).compose(to_e);
    }
  }

  /// A change sending p to the coordinate point e_k.
  static LinearChange sending_to_coordinate_point(const ProjPoint& p, int k) {
    const int n = p.dim();
    int j0 = p.first_nonzero();
    Matrix b = identity_matrix(n + 1);
    for (int i = 0; i <= n; ++i) b[i][j0] = p[i];  // b e_{j0} = p
    // swap e_{j0} and e_k
    Matrix perm = identity_matrix(n + 1);
    std::swap(perm[j0], perm[k]);
    Matrix binv = cremona::inverse(b);
    Matrix m(n + 1, std::vector<Scalar>(n + 1, 0));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        for (int l = 0; l <= n; ++l) m[i][j] += perm[i][l] * binv[l][j];
    return LinearChange(m);
  }

  int dim() const { return static_cast<int>(m_.size()) - 1; }
  const Matrix& matrix() const { return m_; }

  LinearChange inverse() const { return LinearChange(inv_); }

  /// (this o other): apply other first.
  LinearChange compose(const LinearChange& other) const {
    const int n = dim();
    Matrix m(n + 1, std::vector<Scalar>(n + 1, 0));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        for (int l = 0; l <= n; ++l) m[i][j] += m_[i][l] * other.m_[l][j];
    return LinearChange(m);
  }

  ProjPoint apply(const ProjPoint& p) const {
    std::vector<Scalar> out(dim() + 1, 0);
    for (int i = 0; i <= dim(); ++i)
      for (int j = 0; j <= dim(); ++j) out[i] += m_[i][j] * p[j];
    return ProjPoint(out);
  }

  /// F o M^{-1}.
  MultiPoly transform(const MultiPoly& f) const {
    return substitute(f, linear_forms(inv_, f.nvars()));
  }

  /// The forms x_i o M^{-1} = sum_j inv[i][j] x_j.
  static std::vector<MultiPoly> linear_forms(const Matrix& a, int nvars) {
    std::vector<MultiPoly> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::vector<MultiPoly::Term> terms;
      for (std::size_t j = 0; j < a.size(); ++j)
        if (a[i][j] != 0) terms.emplace_back(Monomial::variable(static_cast<int>(j)), a[i][j]);
      out.push_back(MultiPoly::from_terms(nvars, std::move(terms)));
    }
    return out;
  }

 private:
  Matrix m_;
  Matrix inv_;
};

/// Affine expansion of F at p: the chart x_j = 1 for the first nonzero
/// coordinate j of p, translated so that p is the origin. The result lives in
/// n variables (the remaining coordinates, in order).
inline MultiPoly local_expansion(const MultiPoly& f, const ProjPoint& p) {
  const int n = p.dim();
  if (f.nvars() != n + 1) throw InvalidInput("local_expansion: arity mismatch");
  int j0 = p.first_nonzero();
  std::vector<MultiPoly> images;
  int k = 0;
  for (int i = 0; i <= n; ++i) {
    if (i == j0) {
      images.push_back(MultiPoly::constant(n, 1));
    } else {
      images.push_back(MultiPoly::variable(n, k++) + MultiPoly::constant(n, p[i]));
    }
  }
  return substitute(f, images);
}

/// Order of vanishing of a form at a point; 0 when the point is off V(F).
inline int multiplicity_at(const MultiPoly& f, const ProjPoint& p) {
  if (!f.is_homogeneous()) throw InvalidInput("multiplicity_at: form expected");
  if (f.is_zero()) throw InvalidInput("multiplicity_at: zero form");
  return local_expansion(f, p).min_degree();
}

}  // namespace cremona
