#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cremona/cremona.hpp"

namespace cremona {

inline void PrintTo(const ProjPoint& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const MultiPoly& f, std::ostream* os) { *os << f.to_string(); }

}  // namespace cremona

namespace cremona::fixtures {

inline MultiPoly P(const std::string& text, int nvars = 4) { return parse_polynomial(text, nvars); }

inline MultiPoly X(int i, int nvars = 4) { return MultiPoly::variable(nvars, i); }

/// Random form of degree d with at most `terms` terms and small coefficients.
inline MultiPoly random_form(Rng& rng, int nvars, int d, int terms, int height = 3) {
  auto mons = monomials_of_degree(nvars, d);
  MultiPoly f(nvars);
  for (int i = 0; i < terms; ++i) {
    const auto& m = mons[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(mons.size()) - 1))];
    f += MultiPoly::term(nvars, m, rng.small_scalar(height));
  }
  return f;
}

/// Random polynomial (not necessarily homogeneous) of degree <= d.
inline MultiPoly random_poly(Rng& rng, int nvars, int d, int terms, int height = 3) {
  MultiPoly f(nvars);
  for (int i = 0; i < terms; ++i) f += random_form(rng, nvars, static_cast<int>(rng.uniform(0, d)), 1, height);
  return f;
}

/// Membership of a form of degree D in the ideal generated by homogeneous
/// `gens`, decided by the rank of the degree-D part of the ideal.
inline bool member_by_linear_algebra(const std::vector<MultiPoly>& gens, const MultiPoly& f) {
  if (f.is_zero()) return true;
  const int n = f.nvars();
  const int d = f.total_degree();
  std::vector<MultiPoly> span;
  for (const auto& g : gens) {
    const int k = d - g.total_degree();
    if (k < 0) continue;
    for (const auto& m : monomials_of_degree(n, k)) span.push_back(g.multiply_monomial(m, 1));
  }
  if (span.empty()) return false;
  const std::size_t r = span_basis(span).size();
  span.push_back(f);
  return span_basis(span).size() == r;
}

/// Random ideal of at most three forms of degree <= 3 in four variables,
/// together with one member and one form that is usually not a member.
struct MembershipInstance {
  std::vector<MultiPoly> gens;
  MultiPoly member{4};
  MultiPoly probe{4};
};

inline MembershipInstance membership_instance(Rng& rng, int degree = 4) {
  MembershipInstance inst;
  const int count = static_cast<int>(rng.uniform(1, 3));
  for (int i = 0; i < count; ++i) {
    MultiPoly g(4);
    while (g.is_zero()) g = random_form(rng, 4, static_cast<int>(rng.uniform(1, 3)), 3);
    inst.gens.push_back(g);
  }
  for (const auto& g : inst.gens)
    inst.member += g * random_form(rng, 4, degree - g.total_degree(), 2);
  inst.probe = inst.member + random_form(rng, 4, degree, 1);
  return inst;
}

}  // namespace cremona::fixtures
