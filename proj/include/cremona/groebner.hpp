#pragma once

// Buchberger's algorithm over the rationals.
//
// Internally polynomials are kept fraction-free: integer coefficients, made
// primitive after each reduction. Pairs are selected by sugar degree (the
// normal strategy for homogeneous input) and pruned with the Gebauer-Moeller
// installation of Buchberger's two criteria.

#include <atomic>
#include <functional>
#include <cstdint>
#include <limits>
#include <vector>

#include "cremona/poly.hpp"

namespace cremona {

class MonomialOrder {
 public:
  enum class Kind { kGrevlex, kLex, kBlock };

  static MonomialOrder grevlex(int nvars) { return MonomialOrder(Kind::kGrevlex, nvars, 0); }
  static MonomialOrder lex(int nvars) { return MonomialOrder(Kind::kLex, nvars, 0); }

  /// Product of two graded reverse lexicographic orders; every monomial
  /// involving one of the first `front` variables beats every monomial free of
  /// them, so a Groebner basis restricts to one of the elimination ideal.
  static MonomialOrder block_elimination(int nvars, int front) {
    if (front < 0 || front >= nvars)
      throw InvalidInput("block size must be smaller than the variable count");
    return MonomialOrder(Kind::kBlock, nvars, front);
  }

  /// Same order with positive integer weights in the degree comparisons.
  MonomialOrder with_weights(std::vector<int> w) const {
    if (static_cast<int>(w.size()) != nvars_) throw InvalidInput("weight arity");
    MonomialOrder o = *this;
    for (int i = 0; i < nvars_; ++i) {
      if (w[i] <= 0) throw InvalidInput("weights must be positive");
      o.weights_[i] = w[i];
    }
    return o;
  }

  Kind kind() const { return kind_; }
  int nvars() const { return nvars_; }
  int block() const { return block_; }
  int weight(int i) const { return weights_[i]; }

  int weighted_degree(const Monomial& m) const {
    int d = 0;
    for (int i = 0; i < nvars_; ++i) d += weights_[i] * m.exp[i];
    return d;
  }

  /// >0 if a > b, <0 if a < b, 0 if equal.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::kLex:
        for (int i = 0; i < nvars_; ++i)
          if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
        return 0;
      case Kind::kGrevlex:
        return grevlex_range(a, b, 0, nvars_);
      case Kind::kBlock: {
        int c = grevlex_range(a, b, 0, block_);
        if (c != 0) return c;
        return grevlex_range(a, b, block_, nvars_);
      }
    }
    return 0;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.nvars_ == b.nvars_ && a.block_ == b.block_ &&
           a.weights_ == b.weights_;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::kLex: return "lex";
      case Kind::kGrevlex: return "grevlex";
      case Kind::kBlock: return "block(" + std::to_string(block_) + ")";
    }
    return "?";
  }

 private:
  MonomialOrder(Kind k, int n, int block) : kind_(k), nvars_(n), block_(block) {
    if (n <= 0 || n > kMaxVars) throw InvalidInput("order arity out of range");
    weights_.fill(1);
  }

  int grevlex_range(const Monomial& a, const Monomial& b, int lo, int hi) const {
    int da = 0, db = 0;
    for (int i = lo; i < hi; ++i) {
      da += weights_[i] * a.exp[i];
      db += weights_[i] * b.exp[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (int i = hi - 1; i >= lo; --i)
      if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
    return 0;
  }

  Kind kind_;
  int nvars_;
  int block_;
  std::array<int, kMaxVars> weights_{};
};

/// Process-wide default for the reduction budget. The CLI overrides it with
/// --budget before any computation starts.
inline std::atomic<std::uint64_t>& default_step_budget() {
  static std::atomic<std::uint64_t> budget{1'000'000};
  return budget;
}

struct GroebnerBasis {
  MonomialOrder order = MonomialOrder::grevlex(1);
  std::vector<MultiPoly> polys;   // primitive, positive leading coefficient
  std::vector<Monomial> leads;    // leading monomials w.r.t. order
  std::uint64_t reductions = 0;   // work spent computing it

  bool is_unit() const {
    return polys.size() == 1 && polys[0].is_constant() && !polys[0].is_zero();
  }
};

namespace detail {

struct GTerm {
  Monomial m;
  Scalar c;
};
using GPoly = std::vector<GTerm>;

inline std::uint64_t divmask(const Monomial& m) {
  std::uint64_t mask = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    auto e = m.exp[i];
    if (e >= 1) mask |= 1ull << (4 * i);
    if (e >= 2) mask |= 1ull << (4 * i + 1);
    if (e >= 4) mask |= 1ull << (4 * i + 2);
    if (e >= 8) mask |= 1ull << (4 * i + 3);
  }
  return mask;
}

inline void make_monic(GPoly& p) {
  if (p.empty() || p.front().c == 1) return;
  Scalar inv = 1 / p.front().c;
  for (auto& t : p) t.c *= inv;
}

inline GPoly to_gpoly(const MultiPoly& f, const MonomialOrder& ord, bool monic = true) {
  GPoly p;
  p.reserve(f.size());
  for (const auto& [m, c] : f.terms()) p.push_back({m, c});
  std::sort(p.begin(), p.end(), [&](const GTerm& a, const GTerm& b) {
    return ord.greater(a.m, b.m);
  });
  if (monic) make_monic(p);
  return p;
}

/// Integer coefficients with gcd 1 and positive leading coefficient.
inline MultiPoly to_multipoly(const GPoly& p, int nvars) {
  std::vector<MultiPoly::Term> terms;
  terms.reserve(p.size());
  if (p.empty()) return MultiPoly(nvars);
  Integer den = 1, num = 0;
  for (const auto& t : p) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.c.get_num_mpz_t());
  }
  Scalar factor(den, num);
  factor.canonicalize();
  if (p.front().c < 0) factor = -factor;
  for (const auto& t : p) terms.emplace_back(t.m, t.c * factor);
  return MultiPoly::from_terms(nvars, std::move(terms));
}

// out := p[from+1..] - b*(m*g[1..]) for monic g; the heads p[from] and
// b*m*lead(g) cancel by construction.
inline GPoly sub_mul(const MonomialOrder& ord, const GPoly& p, std::size_t from,
                     const GPoly& g, const Monomial& m, const Scalar& b) {
  GPoly out;
  out.reserve(p.size() - from + g.size());
  std::size_t i = from + 1, j = 1;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i]);
      ++i;
      continue;
    }
    Monomial gm = g[j].m * m;
    if (i == p.size()) {
      out.push_back({gm, -b * g[j].c});
      ++j;
      continue;
    }
    int c = ord.compare(p[i].m, gm);
    if (c > 0) {
      out.push_back(p[i]);
      ++i;
    } else if (c < 0) {
      out.push_back({gm, -b * g[j].c});
      ++j;
    } else {
      Scalar v = p[i].c - b * g[j].c;
      if (v != 0) out.push_back({gm, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

/// Reducer lookup: returns the index of a monic polynomial whose leading
/// monomial divides m, or -1.
template <typename Lookup>
GPoly reduce_with(const MonomialOrder& ord, GPoly p, std::size_t keep_head,
                  Lookup&& lookup, const std::function<void(int, const Monomial&)>& on_step) {
  GPoly rem(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(keep_head));
  std::size_t pos = keep_head;
  while (pos < p.size()) {
    const Monomial& head = p[pos].m;
    const GPoly* g = nullptr;
    int k = lookup(head, &g);
    if (k < 0) {
      rem.push_back(std::move(p[pos]));
      ++pos;
      continue;
    }
    Monomial m = head / g->front().m;
    on_step(k, m);
    Scalar b = p[pos].c;
    p = sub_mul(ord, p, pos, *g, m, b);
    pos = 0;
  }
  return rem;
}

class Engine {
 public:
  struct Entry {
    GPoly poly;
    Monomial lead;
    std::uint64_t mask;
    int sugar;
    bool active;
  };

  Engine(const MonomialOrder& ord, std::uint64_t budget)
      : ord_(ord), budget_(budget) {}

  std::uint64_t reductions() const { return reductions_; }

  void run(const std::vector<MultiPoly>& input) {
    for (const auto& f : input) {
      if (f.is_zero()) continue;
      GPoly p = to_gpoly(f, ord_);
      int s = sugar_of(p);
      p = reduce(std::move(p), 0, -1, &s);
      if (p.empty()) continue;
      install(std::move(p), s);
    }
    while (!pairs_.empty()) {
      // normal/sugar strategy: smallest sugar, then smallest lcm
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        const auto& a = pairs_[k];
        const auto& b = pairs_[best];
        if (a.sugar < b.sugar || (a.sugar == b.sugar && ord_.compare(a.lcm, b.lcm) < 0))
          best = k;
      }
      Pair pr = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      GPoly s = spoly(pr);
      int sugar = pr.sugar;
      s = reduce(std::move(s), 0, -1, &sugar);
      if (s.empty()) continue;
      install(std::move(s), sugar);
      if (basis_.back().lead.is_one()) pairs_.clear();
    }
  }

  /// Reduced basis in canonical form, sorted by descending leading monomial.
  std::vector<GPoly> reduced() {
    std::vector<int> keep;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (!basis_[k].active) continue;
      bool redundant = false;
      for (std::size_t j = 0; j < basis_.size() && !redundant; ++j) {
        if (j == k || !basis_[j].active) continue;
        if (basis_[j].lead.divides(basis_[k].lead) &&
            (!(basis_[j].lead == basis_[k].lead) || j < k))
          redundant = true;
      }
      if (!redundant) keep.push_back(static_cast<int>(k));
    }
    for (auto& e : basis_) e.active = false;
    for (int k : keep) basis_[k].active = true;
    std::vector<GPoly> out;
    for (int k : keep) out.push_back(reduce(basis_[k].poly, 1, k, nullptr));
    std::sort(out.begin(), out.end(), [&](const GPoly& a, const GPoly& b) {
      return ord_.greater(a.front().m, b.front().m);
    });
    return out;
  }

 private:
  struct Pair {
    int i, j;
    Monomial lcm;
    int sugar;
  };

  void charge() {
    if (++reductions_ > budget_)
      throw ResourceLimit("Groebner reduction budget of " +
                          std::to_string(budget_) + " steps exhausted");
  }

  int sugar_of(const GPoly& p) const {
    int s = 0;
    for (const auto& t : p) s = std::max(s, ord_.weighted_degree(t.m));
    return s;
  }

  GPoly reduce(GPoly p, std::size_t keep_head, int skip, int* sugar) {
    auto lookup = [&](const Monomial& head, const GPoly** g) {
      std::uint64_t mask = divmask(head);
      int k = -1;
      for (std::size_t idx = 0; idx < basis_.size(); ++idx) {
        if (static_cast<int>(idx) == skip) continue;
        const auto& e = basis_[idx];
        if (!e.active || (e.mask & ~mask) || !e.lead.divides(head)) continue;
        if (k < 0 || e.poly.size() < basis_[k].poly.size()) k = static_cast<int>(idx);
      }
      if (k >= 0) *g = &basis_[k].poly;
      return k;
    };
    auto on_step = [&](int k, const Monomial& m) {
      charge();
      if (sugar) *sugar = std::max(*sugar, basis_[k].sugar + ord_.weighted_degree(m));
    };
    GPoly rem = reduce_with(ord_, std::move(p), keep_head, lookup, on_step);
    make_monic(rem);
    return rem;
  }

  GPoly spoly(const Pair& pr) {
    const auto& f = basis_[pr.i];
    const auto& g = basis_[pr.j];
    Monomial mf = pr.lcm / f.lead;
    Monomial mg = pr.lcm / g.lead;
    GPoly fm;
    fm.reserve(f.poly.size());
    for (const auto& t : f.poly) fm.push_back({t.m * mf, t.c});
    GPoly s = sub_mul(ord_, fm, 0, g.poly, mg, Scalar(1));
    make_monic(s);
    return s;
  }

  void install(GPoly h, int sugar) {
    make_monic(h);
    Entry e{std::move(h), {}, 0, sugar, true};
    e.lead = e.poly.front().m;
    e.mask = divmask(e.lead);
    const int hi = static_cast<int>(basis_.size());
    basis_.push_back(std::move(e));
    const Entry& H = basis_.back();

    // Gebauer-Moeller update
    std::vector<Pair> c;
    for (int k = 0; k < hi; ++k) {
      if (!basis_[k].active) continue;
      Monomial l = Monomial::lcm(basis_[k].lead, H.lead);
      int s = std::max(basis_[k].sugar + ord_.weighted_degree(l / basis_[k].lead),
                       H.sugar + ord_.weighted_degree(l / H.lead));
      c.push_back({k, hi, l, s});
    }
    std::vector<Pair> d;
    for (std::size_t a = 0; a < c.size(); ++a) {
      const Pair& p = c[a];
      bool keep = Monomial::coprime(basis_[p.i].lead, H.lead);
      if (!keep) {
        bool dominated = false;
        for (std::size_t b = a + 1; b < c.size() && !dominated; ++b)
          if (c[b].lcm.divides(p.lcm)) dominated = true;
        for (const auto& q : d)
          if (!dominated && q.lcm.divides(p.lcm)) dominated = true;
        keep = !dominated;
      }
      if (keep) d.push_back(p);
    }
    std::vector<Pair> kept;
    kept.reserve(pairs_.size() + d.size());
    for (const auto& p : pairs_) {
      bool drop = H.lead.divides(p.lcm) &&
                  !(Monomial::lcm(basis_[p.i].lead, H.lead) == p.lcm) &&
                  !(Monomial::lcm(basis_[p.j].lead, H.lead) == p.lcm);
      if (!drop) kept.push_back(p);
    }
    for (const auto& p : d)
      if (!Monomial::coprime(basis_[p.i].lead, H.lead)) kept.push_back(p);
    pairs_.swap(kept);

    for (int k = 0; k < hi; ++k)
      if (basis_[k].active && H.lead.divides(basis_[k].lead)) basis_[k].active = false;
  }

  MonomialOrder ord_;
  std::uint64_t budget_;
  std::uint64_t reductions_ = 0;
  std::vector<Entry> basis_;
  std::vector<Pair> pairs_;
};

}  // namespace detail

/// Reduced Groebner basis of the ideal generated by `gens` (zero generators
/// are ignored). Throws ResourceLimit when the reduction budget runs out.
inline GroebnerBasis groebner_basis(const std::vector<MultiPoly>& gens,
                                    const MonomialOrder& ord,
                                    std::uint64_t budget = 0) {
  if (budget == 0) budget = default_step_budget().load();
  for (const auto& g : gens)
    if (g.nvars() != ord.nvars()) throw InvalidInput("groebner: order arity mismatch");
  detail::Engine engine(ord, budget);
  engine.run(gens);
  auto red = engine.reduced();
  GroebnerBasis gb{ord, {}, {}, engine.reductions()};
  for (const auto& p : red) {
    gb.leads.push_back(p.front().m);
    gb.polys.push_back(detail::to_multipoly(p, ord.nvars()));
  }
  return gb;
}

/// Remainder of f modulo a Groebner basis.
inline MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& gb,
                             std::uint64_t budget = 0) {
  if (budget == 0) budget = default_step_budget().load();
  if (f.is_zero()) return f;
  std::vector<detail::GPoly> basis;
  std::vector<std::uint64_t> masks;
  for (const auto& g : gb.polys) {
    basis.push_back(detail::to_gpoly(g, gb.order));
    masks.push_back(detail::divmask(basis.back().front().m));
  }
  auto lookup = [&](const Monomial& head, const detail::GPoly** g) {
    std::uint64_t mask = detail::divmask(head);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!(masks[i] & ~mask) && basis[i].front().m.divides(head)) {
        *g = &basis[i];
        return static_cast<int>(i);
      }
    return -1;
  };
  std::uint64_t steps = 0;
  auto on_step = [&](int, const Monomial&) {
    if (++steps > budget) throw ResourceLimit("normal form budget exhausted");
  };
  auto rem = detail::reduce_with(gb.order, detail::to_gpoly(f, gb.order, false), 0,
                                 lookup, on_step);
  std::vector<MultiPoly::Term> terms;
  for (auto& t : rem) terms.emplace_back(t.m, std::move(t.c));
  return MultiPoly::from_terms(f.nvars(), std::move(terms));
}

inline bool reduces_to_zero(const MultiPoly& f, const GroebnerBasis& gb) {
  return normal_form(f, gb).is_zero();
}

}  // namespace cremona
