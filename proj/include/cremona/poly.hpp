#pragma once

// Exact multivariate polynomials over the rationals.
//
// A MultiPoly is a sparse, canonically ordered list of (exponent vector,
// nonzero coefficient) pairs. Two polynomials are equal iff their term lists
// are equal, so structural comparison is mathematical equality.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cremona/errors.hpp"

namespace cremona {

using Scalar = mpq_class;
using Integer = mpz_class;

inline constexpr int kMaxVars = 16;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};

  int degree() const {
    int d = 0;
    for (auto e : exp) d += e;
    return d;
  }

  bool divides(const Monomial& other) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (exp[i] > other.exp[i]) return false;
    return true;
  }

  bool is_one() const {
    for (auto e : exp)
      if (e != 0) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i)
      r.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
    return r;
  }

  // Caller guarantees b divides a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i)
      r.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
    return r;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.exp[i] = std::max(a.exp[i], b.exp[i]);
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.exp[i] = std::min(a.exp[i], b.exp[i]);
    return r;
  }

  static bool coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i)
      if (a.exp[i] != 0 && b.exp[i] != 0) return false;
    return true;
  }

  static Monomial variable(int i, int power = 1) {
    Monomial m;
    m.exp[i] = static_cast<std::uint16_t>(power);
    return m;
  }
};

/// Storage order of MultiPoly terms: total degree, then lexicographic.
/// Returns true when a sorts strictly before b (a is "larger").
inline bool storage_before(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i];
  return false;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto e : m.exp) h = (h ^ e) * 1099511628211ull;
    return h;
  }
};

class MultiPoly {
 public:
  using Term = std::pair<Monomial, Scalar>;

  MultiPoly() = default;
  explicit MultiPoly(int nvars) : nvars_(nvars) { check_arity(nvars); }

  static MultiPoly constant(int nvars, const Scalar& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_.emplace_back(Monomial{}, c);
    return p;
  }

  static MultiPoly variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw InvalidInput("variable index out of range");
    MultiPoly p(nvars);
    p.terms_.emplace_back(Monomial::variable(i), Scalar(1));
    return p;
  }

  static MultiPoly term(int nvars, const Monomial& m, const Scalar& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_.emplace_back(m, c);
    return p;
  }

  /// Builds a canonical polynomial from arbitrary (possibly repeated or zero)
  /// terms.
  static MultiPoly from_terms(int nvars, std::vector<Term> terms) {
    MultiPoly p(nvars);
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return storage_before(a.first, b.first);
    });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
        if (p.terms_.back().second == 0) p.terms_.pop_back();
      } else if (t.second != 0) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
  }

  /// -1 for the zero polynomial.
  int total_degree() const {
    return terms_.empty() ? -1 : terms_.front().first.degree();
  }

  /// Order of vanishing at the origin; -1 for the zero polynomial.
  int min_degree() const {
    if (terms_.empty()) return -1;
    return terms_.back().first.degree();
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_.front().first.degree();
    return terms_.back().first.degree() == d;
  }

  int degree_in(int var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max<int>(d, m.exp[var]);
    return d;
  }

  Scalar coefficient(const Monomial& m) const {
    for (const auto& [mm, c] : terms_)
      if (mm == m) return c;
    return 0;
  }

  const Scalar& leading_coefficient() const { return terms_.front().second; }

  MultiPoly homogeneous_part(int d) const {
    MultiPoly r(nvars_);
    for (const auto& t : terms_)
      if (t.first.degree() == d) r.terms_.push_back(t);
    return r;
  }

  /// Terms of total degree < d.
  MultiPoly truncated(int d) const {
    MultiPoly r(nvars_);
    for (const auto& t : terms_)
      if (t.first.degree() < d) r.terms_.push_back(t);
    return r;
  }

  /// Content-normalized copy: integer coefficients with gcd 1 and positive
  /// leading coefficient. The zero polynomial is returned unchanged.
  MultiPoly primitive() const {
    if (terms_.empty()) return *this;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& [m, c] : terms_) {
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
              c.get_den_mpz_t());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    Scalar factor(den_lcm, num_gcd);
    factor.canonicalize();
    if (terms_.front().second < 0) factor = -factor;
    return *this * factor;
  }

  /// Scales so that the leading coefficient is 1.
  MultiPoly monic() const {
    if (terms_.empty()) return *this;
    Scalar inv = 1 / terms_.front().second;
    return *this * inv;
  }

  Scalar evaluate(std::span<const Scalar> point) const {
    if (static_cast<int>(point.size()) != nvars_)
      throw InvalidInput("evaluate: point arity mismatch");
    Scalar total = 0;
    for (const auto& [m, c] : terms_) {
      Scalar v = c;
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < m.exp[i]; ++k) v *= point[i];
      total += v;
    }
    return total;
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    return merge(a, b, Scalar(1));
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    return merge(a, b, Scalar(-1));
  }

  friend MultiPoly operator*(const MultiPoly& a, const Scalar& s) {
    if (s == 0) return MultiPoly(a.nvars_);
    MultiPoly r = a;
    for (auto& t : r.terms_) t.second *= s;
    return r;
  }
  friend MultiPoly operator*(const Scalar& s, const MultiPoly& a) {
    return a * s;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return MultiPoly(a.nvars_);
    std::vector<Term> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) acc.emplace_back(ma * mb, ca * cb);
    return from_terms(a.nvars_, std::move(acc));
  }

  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly multiply_monomial(const Monomial& m, const Scalar& c) const {
    MultiPoly r(nvars_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [mm, cc] : terms_) r.terms_.emplace_back(mm * m, cc * c);
    return r;  // multiplication by a monomial preserves the storage order
  }

  MultiPoly pow(int k) const {
    MultiPoly r = constant(nvars_, 1);
    MultiPoly base = *this;
    while (k > 0) {
      if (k & 1) r = r * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Same polynomial viewed in a ring with more (or fewer, if unused)
  /// variables.
  MultiPoly with_nvars(int n) const {
    check_arity(n);
    for (const auto& [m, c] : terms_)
      for (int i = n; i < kMaxVars; ++i)
        if (m.exp[i] != 0)
          throw InvalidInput("with_nvars: polynomial uses a dropped variable");
    MultiPoly r = *this;
    r.nvars_ = n;
    return r;
  }

  std::string to_string() const;
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  static void check_arity(int n) {
    if (n < 0 || n > kMaxVars)
      throw InvalidInput("variable count must be in [0, 16]");
  }

  static void check_same(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_)
      throw InvalidInput("variable-count mismatch: " +
                         std::to_string(a.nvars_) + " vs " +
                         std::to_string(b.nvars_));
  }

  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b,
                         const Scalar& sign) {
    check_same(a, b);
    MultiPoly r(a.nvars_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() ||
          (i < a.terms_.size() &&
           storage_before(a.terms_[i].first, b.terms_[j].first))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() ||
                 storage_before(b.terms_[j].first, a.terms_[i].first)) {
        r.terms_.emplace_back(b.terms_[j].first, sign * b.terms_[j].second);
        ++j;
      } else {
        Scalar c = a.terms_[i].second + sign * b.terms_[j].second;
        if (c != 0) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  int nvars_ = 0;
  std::vector<Term> terms_;
};

inline std::vector<std::string> default_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

inline std::string MultiPoly::to_string() const {
  return to_string(default_names(nvars_));
}

inline std::string MultiPoly::to_string(
    const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Scalar a = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (a != 1 || m.is_one()) {
      out << a.get_str();
      wrote = true;
    }
    for (int i = 0; i < nvars_; ++i) {
      if (m.exp[i] == 0) continue;
      if (wrote) out << "*";
      out << names[i];
      if (m.exp[i] > 1) out << "^" << m.exp[i];
      wrote = true;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Basic operations

inline MultiPoly derivative(const MultiPoly& f, int var) {
  std::vector<MultiPoly::Term> out;
  for (const auto& [m, c] : f.terms()) {
    if (m.exp[var] == 0) continue;
    Monomial d = m;
    d.exp[var] -= 1;
    out.emplace_back(d, c * m.exp[var]);
  }
  return MultiPoly::from_terms(f.nvars(), std::move(out));
}

inline std::vector<MultiPoly> partials(const MultiPoly& f) {
  std::vector<MultiPoly> out;
  for (int i = 0; i < f.nvars(); ++i) out.push_back(derivative(f, i));
  return out;
}

/// Replaces variable i of f by images[i]; all images must share a ring.
inline MultiPoly substitute(const MultiPoly& f,
                            const std::vector<MultiPoly>& images) {
  if (static_cast<int>(images.size()) != f.nvars())
    throw InvalidInput("substitute: expected " + std::to_string(f.nvars()) +
                       " images, got " + std::to_string(images.size()));
  int target = images.empty() ? 0 : images[0].nvars();
  for (const auto& g : images)
    if (g.nvars() != target)
      throw InvalidInput("substitute: images live in different rings");
  if (f.is_zero()) return MultiPoly(target);

  // powers[i][k] = images[i]^k, built lazily.
  std::vector<std::vector<MultiPoly>> powers(f.nvars());
  auto power = [&](int i, int k) -> const MultiPoly& {
    auto& row = powers[i];
    if (row.empty()) row.push_back(MultiPoly::constant(target, 1));
    while (static_cast<int>(row.size()) <= k) row.push_back(row.back() * images[i]);
    return row[k];
  };

  std::vector<MultiPoly::Term> acc;
  for (const auto& [m, c] : f.terms()) {
    MultiPoly t = MultiPoly::constant(target, c);
    for (int i = 0; i < f.nvars() && !t.is_zero(); ++i)
      if (m.exp[i] > 0) t = t * power(i, m.exp[i]);
    for (const auto& term : t.terms()) acc.push_back(term);
  }
  return MultiPoly::from_terms(target, std::move(acc));
}

/// Gcd of the exponent vectors of all terms: the largest monomial dividing f.
inline Monomial monomial_content(const MultiPoly& f) {
  if (f.is_zero()) return Monomial{};
  Monomial g = f.terms().front().first;
  for (const auto& [m, c] : f.terms()) g = Monomial::gcd(g, m);
  return g;
}

inline MultiPoly divide_by_monomial(const MultiPoly& f, const Monomial& m) {
  std::vector<MultiPoly::Term> out;
  out.reserve(f.size());
  for (const auto& [mm, c] : f.terms()) {
    if (!m.divides(mm)) throw InvalidInput("monomial does not divide");
    out.emplace_back(mm / m, c);
  }
  return MultiPoly::from_terms(f.nvars(), std::move(out));
}

inline Integer integer_gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace cremona
