#pragma once

// Univariate helpers: exact gcd and square-free decomposition over Q,
// rational roots, and an irreducibility test modulo a prime.

#include <cstdint>
#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "cremona/poly.hpp"

namespace cremona {

/// Dense univariate polynomial over Q, coeffs[i] multiplies t^i. Kept trimmed
/// (no trailing zero coefficients); the zero polynomial is empty.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Scalar> c) : c_(std::move(c)) { trim(); }

  /// Reads a polynomial in which only variable `var` occurs.
  static UPoly from_multipoly(const MultiPoly& f, int var) {
    std::vector<Scalar> c;
    for (const auto& [m, coef] : f.terms()) {
      for (int i = 0; i < f.nvars(); ++i)
        if (i != var && m.exp[i] != 0)
          throw InvalidInput("from_multipoly: not univariate");
      int e = m.exp[var];
      if (static_cast<int>(c.size()) <= e) c.resize(e + 1, 0);
      c[e] += coef;
    }
    return UPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  const Scalar& lead() const { return c_.back(); }

  Scalar evaluate(const Scalar& x) const {
    Scalar r = 0;
    for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
    return r;
  }

  UPoly derivative() const {
    std::vector<Scalar> d;
    for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * i);
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    std::vector<Scalar> c = c_;
    Scalar inv = 1 / lead();
    for (auto& x : c) x *= inv;
    return UPoly(std::move(c));
  }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
  }

  /// Quotient and remainder.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw InvalidInput("division by zero polynomial");
    std::vector<Scalar> r = a.c_;
    int db = b.degree();
    std::vector<Scalar> q(std::max(0, a.degree() - db + 1), 0);
    for (int i = a.degree(); i >= db; --i) {
      if (r[i] == 0) continue;
      Scalar f = r[i] / b.lead();
      q[i - db] = f;
      for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

/// Yun's square-free decomposition: returns (multiplicity, factor) pairs whose
/// product (up to a constant) is f; each factor is square-free and monic.
inline std::vector<std::pair<int, UPoly>> squarefree_decomposition(const UPoly& f) {
  std::vector<std::pair<int, UPoly>> out;
  if (f.degree() <= 0) return out;
  UPoly a = f.monic();
  UPoly b = a.derivative();
  UPoly c = UPoly::gcd(a, b);
  UPoly w = UPoly::divmod(a, c).first;
  UPoly y = UPoly::divmod(b, c).first;
  int i = 1;
  for (;;) {
    UPoly z = [&] {
      // y - w'
      auto wd = w.derivative();
      std::vector<Scalar> r(std::max(y.coeffs().size(), wd.coeffs().size()), 0);
      for (std::size_t k = 0; k < y.coeffs().size(); ++k) r[k] += y.coeffs()[k];
      for (std::size_t k = 0; k < wd.coeffs().size(); ++k) r[k] -= wd.coeffs()[k];
      return UPoly(std::move(r));
    }();
    if (w.degree() <= 0) break;
    UPoly g = UPoly::gcd(w, z);
    if (g.degree() > 0) out.emplace_back(i, g);
    w = UPoly::divmod(w, g).first;
    y = UPoly::divmod(z, g).first;
    ++i;
  }
  return out;
}

namespace detail {

inline Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto f = [&](const Integer& v) {
      Integer r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      Integer diff = abs(x - y);
      d = integer_gcd(diff, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(Integer n, std::map<Integer, int>& out) {
  if (n < 0) n = -n;
  if (n <= 1) return;
  for (unsigned long p = 2; p < 10000 && Integer(p) * p <= n; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    ++out[n];
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

inline std::vector<Integer> positive_divisors(const Integer& n) {
  std::map<Integer, int> f;
  factor_into(n, f);
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : f) {
    std::size_t base = divs.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace detail

/// Distinct rational roots of f, ascending.
inline std::vector<Scalar> rational_roots(const UPoly& f) {
  std::vector<Scalar> roots;
  if (f.degree() <= 0) return roots;
  // work with the square-free part, cleared to integer coefficients
  UPoly g = UPoly::divmod(f, UPoly::gcd(f, f.derivative())).first;
  std::vector<Scalar> c = g.coeffs();
  int low = 0;
  while (low < static_cast<int>(c.size()) && c[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  c.erase(c.begin(), c.begin() + low);
  if (c.size() <= 1) return roots;
  Integer den = 1;
  for (const auto& x : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> ic;
  for (const auto& x : c) ic.push_back(x.get_num() * (den / x.get_den()));
  UPoly h(std::vector<Scalar>(c.begin(), c.end()));
  auto ps = detail::positive_divisors(ic.front());
  auto qs = detail::positive_divisors(ic.back());
  for (const auto& q : qs)
    for (const auto& p : ps)
      for (int sign : {1, -1}) {
        Scalar r(p * sign, q);
        r.canonicalize();
        if (r.get_den() != q) continue;  // visited with a smaller q
        if (h.evaluate(r) == 0) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Rabin's irreducibility test for f modulo p (f must not vanish mod p in
/// the leading coefficient). Only used as a certificate: "true" proves the
/// reduction is irreducible, hence so is f over Q when deg is preserved.
inline bool irreducible_mod_p(const UPoly& f, std::uint64_t p) {
  using u64 = std::uint64_t;
  using u128 = unsigned __int128;
  const int n = f.degree();
  if (n <= 0) return false;
  auto reduce_scalar = [&](const Scalar& x) -> std::optional<u64> {
    Integer num = x.get_num(), den = x.get_den();
    Integer pp(static_cast<unsigned long>(p));
    Integer dm;
    mpz_mod(dm.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
    if (dm == 0) return std::nullopt;
    Integer inv;
    mpz_invert(inv.get_mpz_t(), dm.get_mpz_t(), pp.get_mpz_t());
    Integer r = num * inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pp.get_mpz_t());
    return r.get_ui();
  };
  std::vector<u64> fp(n + 1);
  for (int i = 0; i <= n; ++i) {
    auto v = reduce_scalar(f.coeffs()[i]);
    if (!v) return false;
    fp[i] = *v;
  }
  if (fp[n] == 0) return false;
  auto mul = [&](u64 a, u64 b) { return static_cast<u64>((u128)a * b % p); };
  auto powmod = [&](u64 a, u64 e) {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  };
  // make monic
  u64 inv_lead = powmod(fp[n], p - 2);
  for (auto& x : fp) x = mul(x, inv_lead);
  using P = std::vector<u64>;
  auto trim = [](P& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  };
  auto polymod = [&](P a) {
    trim(a);
    while (static_cast<int>(a.size()) > n) {
      u64 c = a.back();
      int shift = static_cast<int>(a.size()) - 1 - n;
      for (int i = 0; i <= n; ++i)
        a[shift + i] = (a[shift + i] + p - mul(c, fp[i])) % p;
      trim(a);
    }
    return a;
  };
  auto polymul = [&](const P& a, const P& b) {
    if (a.empty() || b.empty()) return P{};
    P r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mul(a[i], b[j])) % p;
    return polymod(r);
  };
  auto polypow = [&](P base, u64 e) {
    P r{1};
    while (e) {
      if (e & 1) r = polymul(r, base);
      base = polymul(base, base);
      e >>= 1;
    }
    return r;
  };
  auto polygcd = [&](P a, P b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
      // a mod b
      u64 inv = powmod(b.back(), p - 2);
      while (a.size() >= b.size() && !a.empty()) {
        u64 c = mul(a.back(), inv);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
          a[shift + i] = (a[shift + i] + p - mul(c, b[i])) % p;
        trim(a);
      }
      std::swap(a, b);
    }
    return a;
  };
  // x^(p^k) mod f for k = 1..n
  std::vector<P> frob(n + 1);
  frob[0] = polymod(P{0, 1});
  for (int k = 1; k <= n; ++k) frob[k] = polypow(frob[k - 1], p);
  auto minus_x = [&](P a) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = (a[1] + p - 1) % p;
    trim(a);
    return a;
  };
  if (!minus_x(frob[n]).empty()) return false;
  for (int q = 2; q <= n; ++q) {
    if (n % q != 0) continue;
    bool prime = true;
    for (int r = 2; r * r <= q; ++r)
      if (q % r == 0) prime = false;
    if (!prime) continue;
    P g = polygcd(fp, minus_x(frob[n / q]));
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace cremona
