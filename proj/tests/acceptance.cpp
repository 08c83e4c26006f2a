#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cremona/cremona.hpp"

using namespace cremona;

namespace {

MultiPoly surface(const std::string& text) { return parse_form(text, 4); }
MultiPoly curve(const std::string& text) { return parse_form(text, 3); }

const char* kFermat = "x0^4 + x1^4 + x2^4 + x3^4";
const char* kOneElliptic = "x0^2*x1^2 + x1^4 + x2^4 + x3^4";
const char* kTwoElliptic = "x0^2*x1^2 + x2^4 + x3^4";
const char* kMonoid = "x3*(x0^3+x1^3+x2^3)+x0^4+x1^4+x2^4";
const char* kLineQuartic = "x0^2*x2*x3 + x1^2*x2^2 + x0*x1*x3^2 + x1^2*x3^2 + 2*x0^2*x2^2";
const char* kTypeOne = "x0^2*x1^2 + x0*x1*x2*x3 + x1^4 + x2^4 + x3^4";
const char* kTypeTwo = "x0^2*x1^2 + x0*x2^3 + x1*x3^3 + x1^4 + x2^4";
const char* kConeThreeNodal = "x1^2*x2^2+x2^2*x3^2+x3^2*x1^2";
const char* kConeTwoNodal = "x1^2*x2^2+x1^2*x3^2+x2^2*x3^2+x1*x3^3";
const char* kConeSmooth = "x1^4+x2^4+x3^4";
const char* kNodalCubic = "x1^2*x2 - x0^2*(x0 + x2)";
const char* kSmoothCubic = "x0^3 + x1^3 + x2^3";
const char* kQuartics[] = {"x0^4 + x1^4 + x2^4", "x0^2*x2^2 + x1^2*x2^2 + x0^4 + x1^4 + x0*x1*x2^2",
                           "x0^2*x1^2 + x0^2*x2^2 + x1^2*x2^2 + x0*x2^3", "x0^2*x1^2 + x1^2*x2^2 + x2^2*x0^2"};

struct Outcome {
  bool pass = true;
  std::ostringstream log;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    log << "    " << (ok ? "ok   " : "FAIL ") << what << "\n";
  }
};

std::string str(long v) { return std::to_string(v); }

void sigma_is(Outcome& o, const char* text, int want, Route route) {
  CremonaCertificate c = minimal_cremona_degree(surface(text));
  o.check(c.sigma == want && c.has_route(route), std::string(text) + ": sigma " +
                                                     (c.sigma ? str(*c.sigma) : std::string("none")) + ", want " +
                                                     str(want) + " via " + route_name(route));
}

void fermat_is_k3(Outcome& o) { sigma_is(o, kFermat, 4, Route::kK3); }

void elliptic_points(Outcome& o) {
  sigma_is(o, kOneElliptic, 1, Route::kUniqueElliptic);
  sigma_is(o, kTwoElliptic, 3, Route::kEllipticRuledNormal);
}

void monoid_witness(Outcome& o) {
  CremonaCertificate c = minimal_cremona_degree(surface(kMonoid));
  o.check(c.has_route(Route::kMonoid), "route MONOID");
  o.check(c.chain.size() == 1 && c.chain[0].image_dd == DimDegree{2, 1},
          "image of the monoid system is a plane (by elimination)");
}

void non_normal_chain(Outcome& o) {
  CremonaCertificate c = minimal_cremona_degree(surface(kLineQuartic));
  o.check(c.sigma == 3, "sigma 3 (elliptic ruled)");
  std::vector<long> got;
  for (const auto& t : c.transcript()) got.push_back(t.degree_after);
  std::string s;
  for (long d : got) s += (s.empty() ? "" : ",") + str(d);
  o.check(got == std::vector<long>{7, 5, 3}, "chain degrees " + s + ", want 7,5,3");
}

void lambda_bookkeeping(Outcome& o) {
  const char* inputs[] = {kTypeOne, kTypeTwo};
  for (int a = 1; a <= 2; ++a) {
    MultiPoly f = surface(inputs[a - 1]);
    RationalMap lam = lambda_map(f, a);
    const std::string tag = "a=" + str(a) + ": ";
    o.check(lam.target_dim() == 7 - a, tag + "target dim " + str(lam.target_dim()) + ", want " + str(7 - a));
    long x = image(lam, HomIdeal(4, {}), "X").image_dd.degree;
    o.check(x == 5 - a, tag + "deg X " + str(x) + ", want " + str(5 - a));
    long s = image(lam, HomIdeal(4, {f}), "S").image_dd.degree;
    o.check(s == 10 - 2 * a, tag + "deg S " + str(s) + ", want " + str(10 - 2 * a));
  }
}

void cone_dichotomy(Outcome& o) {
  sigma_is(o, kConeThreeNodal, 1, Route::kCone);
  sigma_is(o, kConeTwoNodal, 3, Route::kCone);
  sigma_is(o, kConeSmooth, 4, Route::kCone);
}

void cubic_stabilizer(Outcome& o) {
  auto y = [](int i) { return MultiPoly::variable(3, i); };
  Rng rng(4);
  Stabilizer plane = verify_cubic_stabilizer(curve(kNodalCubic), y(0) * y(0) + y(1) * y(2) + y(2) * y(2) * 3,
                                             ProjPoint{-1, 0, 1}, rng);
  o.check(plane.preserves_x, "nodal plane cubic: omega(X) = X");
  o.check(plane.moved_off_x >= 1, "nodal plane cubic: moved " + str(plane.moved_off_x) + " points off X");
  Rng rng2(4);
  Stabilizer cubic = verify_cubic_stabilizer(surface("x0^3 + x1^3 + x2^3 + x3^3"),
                                             surface("x0*x1 + x2^2 - x3^2 + x1*x3"), ProjPoint{1, -1, 0, 0}, rng2);
  o.check(cubic.preserves_x, "Fermat cubic surface: omega(X) = X");
  o.check(cubic.moved_off_x >= 1, "Fermat cubic surface: moved " + str(cubic.moved_off_x) + " points off X");
}

void plane_curves(Outcome& o) {
  std::string v = coolidge_grid_test(curve(kNodalCubic), 6).to_string();
  o.check(v == "PASSES_GRID", "nodal cubic " + v);
  v = coolidge_grid_test(curve(kSmoothCubic), 6).to_string();
  o.check(v == "FAILS(1,1)", "smooth cubic " + v);
  for (int d = 0; d <= 3; ++d) {
    MultiPoly f = curve(kQuartics[d]);
    auto oracle = rational_points_zero_dim(detail::jacobian_scheme(f));
    const long nodes = static_cast<long>(oracle.points.size());
    long g = delta_genus(f).genus;
    o.check(nodes == d && g == 3 - nodes,
            str(d) + "-nodal quartic: genus " + str(g) + ", oracle nodes " + str(nodes));
  }
}

bool member_by_linear_algebra(const std::vector<MultiPoly>& gens, const MultiPoly& f) {
  if (f.is_zero()) return true;
  std::vector<MultiPoly> span;
  for (const auto& g : gens) {
    const int k = f.total_degree() - g.total_degree();
    if (k < 0) continue;
    for (const auto& m : monomials_of_degree(f.nvars(), k)) span.push_back(g.multiply_monomial(m, 1));
  }
  if (span.empty()) return false;
  const std::size_t r = span_basis(span).size();
  span.push_back(f);
  return span_basis(span).size() == r;
}

MultiPoly random_form(Rng& rng, int d, int terms) {
  auto mons = monomials_of_degree(4, d);
  MultiPoly f(4);
  for (int i = 0; i < terms; ++i)
    f += MultiPoly::term(4, mons[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(mons.size()) - 1))],
                         rng.small_scalar(3));
  return f;
}

void engine_oracle(Outcome& o) {
  Rng rng(20);
  int agree = 0, total = 0;
  for (int i = 0; i < 20; ++i) {
    std::vector<MultiPoly> gens;
    const int count = static_cast<int>(rng.uniform(1, 3));
    for (int k = 0; k < count; ++k) {
      MultiPoly g(4);
      while (g.is_zero()) g = random_form(rng, static_cast<int>(rng.uniform(1, 3)), 3);
      gens.push_back(g);
    }
    MultiPoly member(4);
    for (const auto& g : gens) member += g * random_form(rng, 4 - g.total_degree(), 2);
    MultiPoly probe = member + random_form(rng, 4, 1);
    HomIdeal ideal(4, gens);
    for (const MultiPoly* f : {&member, &probe}) {
      ++total;
      agree += ideal.contains(*f) == member_by_linear_algebra(gens, *f);
    }
  }
  o.check(agree == total, str(agree) + "/" + str(total) + " membership decisions agree");
}

std::string suite_reports() {
  struct Item {
    Verb verb;
    const char* input;
  };
  std::vector<Item> items{{Verb::kClassify, kFermat},       {Verb::kClassify, kOneElliptic},
                          {Verb::kClassify, kTwoElliptic},  {Verb::kReduce, kMonoid},
                          {Verb::kReduce, kLineQuartic},    {Verb::kClassify, kTypeOne},
                          {Verb::kClassify, kTypeTwo},      {Verb::kStabilize, kConeThreeNodal},
                          {Verb::kStabilize, kConeTwoNodal}, {Verb::kStabilize, kConeSmooth},
                          {Verb::kAdjoint, kNodalCubic},    {Verb::kAdjoint, kSmoothCubic}};
  for (const char* q : kQuartics) items.push_back({Verb::kGenus, q});
  std::string out;
  for (const auto& it : items) {
    Command cmd;
    cmd.verb = it.verb;
    cmd.input = it.input;
    cmd.seed = 7;
    cmd.format = ReportFormat::kJson;
    out += run(cmd).rendered();
  }
  return out;
}

void determinism(Outcome& o) {
  const std::string first = suite_reports();
  const std::string second = suite_reports();
  o.check(first == second, "two runs produce " + str(static_cast<long>(first.size())) + " identical bytes");
}

struct Criterion {
  const char* description;
  double limit_seconds;
  std::function<void(Outcome&)> body;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"Fermat quartic has sigma 4 by the K3 route", 60, fermat_is_k3},
      {"one elliptic point gives sigma 1, two give sigma 3", 300, elliptic_points},
      {"monoid system maps a triple-point quartic onto a plane", 120, monoid_witness},
      {"double-line chain has degrees 7, 5, 3", 900, non_normal_chain},
      {"Lambda maps: target dimension, threefold and surface degrees", 1800, lambda_bookkeeping},
      {"cones over 3-nodal, 2-nodal and smooth quartics give 1, 3, 4", 900, cone_dichotomy},
      {"cubic stabilizer preserves X and moves points", 600, cubic_stabilizer},
      {"plane-curve grid verdicts and nodal quartic genera", 120, plane_curves},
      {"Groebner membership agrees with linear algebra", 600, engine_oracle},
      {"fixed-seed reports are byte-identical", 1800, determinism},
  };
  return all;
}

bool run_criterion(int n) {
  const Criterion& c = criteria()[static_cast<std::size_t>(n - 1)];
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.body(o);
  } catch (const std::exception& e) {
    o.check(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > c.limit_seconds) o.check(false, "time limit " + str(static_cast<long>(c.limit_seconds)) + " s exceeded");
  std::printf("criterion %d: %s %s (%.2fs)\n%s", n, o.pass ? "PASS" : "FAIL", c.description, secs,
              o.log.str().c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  const int count = static_cast<int>(criteria().size());
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    int n = std::atoi(argv[i]);
    if (n < 1 || n > count) {
      std::fprintf(stderr, "usage: %s [criterion 1..%d]...\n", argv[0], count);
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty())
    for (int n = 1; n <= count; ++n) selected.push_back(n);
  bool ok = true;
  for (int n : selected) ok = run_criterion(n) && ok;
  return ok ? 0 : 1;
}
