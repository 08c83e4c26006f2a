#pragma once

// Dense exact linear algebra over the rationals (row reduction, rank, kernel).

#include <vector>

#include "cremona/poly.hpp"

namespace cremona {

using Matrix = std::vector<std::vector<Scalar>>;

/// Row-reduces m in place to reduced row echelon form; returns pivot columns.
inline std::vector<int> row_reduce(Matrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[r], m[pivot]);
    Scalar inv = 1 / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Scalar f = m[i][c];
      for (int j = c; j < cols; ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(Matrix m) { return static_cast<int>(row_reduce(m).size()); }

/// Basis of {v : m v = 0}.
inline std::vector<std::vector<Scalar>> kernel(Matrix m, int cols) {
  std::vector<int> pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Scalar determinant(Matrix m) {
  const int n = static_cast<int>(m.size());
  Scalar det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int i = c; i < n; ++i)
      if (m[i][c] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != c) {
      std::swap(m[c], m[pivot]);
      det = -det;
    }
    det *= m[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Scalar f = m[i][c] / m[c][c];
      for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

inline Matrix inverse(const Matrix& a) {
  const int n = static_cast<int>(a.size());
  Matrix aug(n, std::vector<Scalar>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  auto piv = row_reduce(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1)
    throw InvalidInput("matrix is singular");
  Matrix inv(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

inline Matrix identity_matrix(int n) {
  Matrix m(n, std::vector<Scalar>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

/// Coefficient vectors of the given polynomials over a shared monomial list.
/// Monomials are collected from the inputs in storage order.
struct CoefficientTable {
  std::vector<Monomial> monomials;
  Matrix rows;
};

inline CoefficientTable coefficient_table(const std::vector<MultiPoly>& polys) {
  std::vector<Monomial> mons;
  for (const auto& p : polys)
    for (const auto& [m, c] : p.terms()) mons.push_back(m);
  std::sort(mons.begin(), mons.end(), storage_before);
  mons.erase(std::unique(mons.begin(), mons.end()), mons.end());
  CoefficientTable t;
  t.monomials = mons;
  for (const auto& p : polys) {
    std::vector<Scalar> row(mons.size(), 0);
    for (const auto& [m, c] : p.terms()) {
      auto it = std::lower_bound(mons.begin(), mons.end(), m, storage_before);
      row[it - mons.begin()] = c;
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// All monomials of total degree d in n variables, in storage order.
inline std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  Monomial m;
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == n - 1) {
      m.exp[var] = static_cast<std::uint16_t>(left);
      out.push_back(m);
      m.exp[var] = 0;
      return;
    }
    for (int e = left; e >= 0; --e) {
      m.exp[var] = static_cast<std::uint16_t>(e);
      rec(var + 1, left - e);
    }
    m.exp[var] = 0;
  };
  if (n == 0) {
    if (d == 0) out.push_back(m);
    return out;
  }
  rec(0, d);
  return out;
}

/// Linearly independent subset spanning the same space (row echelon basis),
/// returned as polynomials.
inline std::vector<MultiPoly> span_basis(const std::vector<MultiPoly>& polys) {
  if (polys.empty()) return {};
  int n = polys[0].nvars();
  CoefficientTable t = coefficient_table(polys);
  if (t.monomials.empty()) return {};
  auto piv = row_reduce(t.rows);
  std::vector<MultiPoly> out;
  for (std::size_t r = 0; r < piv.size(); ++r) {
    std::vector<MultiPoly::Term> terms;
    for (std::size_t j = 0; j < t.monomials.size(); ++j)
      if (t.rows[r][j] != 0) terms.emplace_back(t.monomials[j], t.rows[r][j]);
    out.push_back(MultiPoly::from_terms(n, std::move(terms)).primitive());
  }
  return out;
}

}  // namespace cremona
