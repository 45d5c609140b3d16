// Acceptance suite: one PASS/FAIL line per criterion. With an argument N only
// criterion N runs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "brickint/convergence.hpp"
#include "brickint/directional.hpp"
#include "brickint/dsl.hpp"
#include "brickint/gallery.hpp"
#include "brickint/gauge.hpp"
#include "brickint/indefinite.hpp"
#include "brickint/integrator.hpp"
#include "brickint/jordan.hpp"
#include "support.hpp"

using namespace brickint;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

IntegrandSpec xy_spec() {
  IntegrandSpec f;
  f.ambient = unit_cube(2);
  f.eval = [](const Point& x) { return Rational(x[0] * x[1]).get_d(); };
  return f;
}

IntegrandSpec fixture_spec(const std::string& ref) {
  gallery::Fixture fx = gallery::make_fixture(ref);
  IntegrandSpec f;
  f.ambient = fx.ambient;
  f.eval = fx.eval;
  f.support = fx.support;
  f.claimed_bound = fx.bound;
  return f;
}

Outcome c1() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng = stream(101, 0);
  std::size_t mismatches = 0;
  for (int i = 0; i < 500; ++i) {
    StepFunction g = testkit::random_step(rng, 1 + rng() % 6);
    StepFunction h = testkit::rewrite(g, rng);
    if (integral(g) != integral(h)) ++mismatches;
  }
  const double secs = elapsed(t0);
  Outcome o{mismatches == 0 && secs < 10, std::to_string(mismatches) + " mismatches in 500, " + fmt("%.2f s", secs)};
  return o;
}

Outcome c2() {
  Rng rng = stream(102, 0);
  std::size_t sign_bad = 0, bound_bad = 0, nonneg = 0, nonpos = 0;
  for (int i = 0; i < 200; ++i) {
    // a third nonnegative by construction, a third negated, the rest mixed
    StepFunction g = testkit::random_step(rng, 1 + rng() % 6, i % 3 != 2);
    if (i % 3 == 1) g = combine(-1, g, 0, StepFunction(g.ambient));
    // canceling pairs keep the canonical form but hide it from the terms
    Brick b = testkit::random_brick(rng);
    Rational c = testkit::random_coeff(rng);
    g.add(c, b);
    g.add(-c, b);

    StepFunction can = canonicalize(g);
    bool all_nonneg = true, all_nonpos = true, some_pos = false, some_neg = false;
    for (const auto& t : can.terms) {
      if (t.coeff < 0) all_nonneg = false;
      if (t.coeff > 0) all_nonpos = false;
      if (t.coeff > 0 && volume(t.support) > 0) some_pos = true;
      if (t.coeff < 0 && volume(t.support) > 0) some_neg = true;
    }
    const Rational v = integral(g);
    if (all_nonneg) {
      ++nonneg;
      if (v < 0 || (some_pos && v == 0)) ++sign_bad;
    }
    if (all_nonpos) {
      ++nonpos;
      if (v > 0 || (some_neg && v == 0)) ++sign_bad;
    }
    if (abs(v) > sup_abs(g) * support_volume_sum(g)) ++bound_bad;
  }
  return {sign_bad == 0 && bound_bad == 0 && nonneg > 0 && nonpos > 0,
          std::to_string(nonneg) + " nonnegative, " + std::to_string(nonpos) + " nonpositive; sign violations " +
              std::to_string(sign_bad) + ", bound violations " + std::to_string(bound_bad)};
}

Outcome c3() {
  auto t0 = std::chrono::steady_clock::now();
  IntegrandSpec f = xy_spec();
  const double oracle = midpoint_integral(f, 512).get_d();
  IntegrateOptions o;
  o.schedule = {8, 16, 32, 64, 128};
  IntegrateResult k = k_integrate(f, o);
  const double fub = fubini(f, 128).get_d();
  const double secs = elapsed(t0);
  const double ek = std::abs(k.value.get_d() - oracle), ef = std::abs(fub - oracle);
  return {ek <= 1e-3 && ef <= 1e-3 && k.m <= 128 && std::abs(oracle - 0.25) <= 1e-3 && secs < 30,
          "oracle " + fmt("%.9f", oracle) + ", k_integrate " + fmt("%.9f", k.value.get_d()) + " at m=" +
              std::to_string(k.m) + ", fubini " + fmt("%.9f", fub) + ", " + fmt("%.2f s", secs)};
}

Outcome c4() {
  IntegrandSpec f = fixture_spec("gallery:triangle");
  IntegrateOptions o;
  o.schedule = {8, 16, 32, 64, 128, 256, 512, 1024};
  o.tol = Rational(1, 400);
  IntegrateResult r = k_integrate(f, o);
  ContentBounds b = content_bounds(f.support, f.ambient, 10);
  const bool inside = b.inner <= r.value && r.value <= b.outer;
  return {r.reached && inside && b.gap() < Rational(1, 100),
          "value " + fmt("%.6f", r.value.get_d()) + " (m=" + std::to_string(r.m) + ", bound " +
              fmt("%.2e", r.error_bound.get_d()) + ") in [" + fmt("%.6f", b.inner.get_d()) + ", " +
              fmt("%.6f", b.outer.get_d()) + "], gap " + fmt("%.5f", b.gap().get_d())};
}

Outcome c5() {
  Rng rng = stream(105, 0);
  const double floor = std::ldexp(1.0, -10);
  const Brick t = unit_cube(2);
  std::size_t bad = 0, total_cells = 0;
  for (int i = 0; i < 100; ++i) {
    Gauge gauge;
    std::uniform_real_distribution<double> u(0, 1);
    switch (i % 3) {
      case 0: {
        const double c0 = u(rng), c1 = u(rng), a = 0.1 + 0.9 * u(rng);
        gauge = [=](const Point& x) {
          const double d = std::max(std::abs(x[0].get_d() - c0), std::abs(x[1].get_d() - c1));
          return std::max(floor, a * d);
        };
        break;
      }
      case 1: {
        const double r = 0.05 + 0.25 * u(rng), w = 1 + 20 * u(rng);
        gauge = [=](const Point& x) {
          return floor + r * (1 + std::sin(w * x[0].get_d()) * std::cos(w * x[1].get_d())) / 2;
        };
        break;
      }
      default: {
        const double lo0 = 0.9 * u(rng), lo1 = 0.9 * u(rng), side = 0.02 * u(rng), big = 0.1 + 0.4 * u(rng);
        gauge = [=](const Point& x) {
          const double a = x[0].get_d(), b = x[1].get_d();
          return (a >= lo0 && a <= lo0 + side && b >= lo1 && b <= lo1 + side) ? floor : big;
        };
        break;
      }
    }
    DottedPartition p = cousin_partition(gauge, t, 16);
    FineVerdict v = verify_fine(p, gauge, t);
    Rational vol = 0;
    for (const auto& c : p) vol += volume(c.cell);
    total_cells += p.size();
    if (!v.pass || vol != 1) ++bad;
  }
  return {bad == 0, std::to_string(bad) + " failures in 100 gauges, " + std::to_string(total_cells) + " cells in all"};
}

Outcome c6() {
  IntegrandSpec f = fixture_spec("gallery:f_prop41c?k=8");
  LimitConfig cfg = default_limit_config();
  std::string detail = "dis2 volumes";
  bool big = true;
  for (unsigned d : {6u, 8u, 10u}) {
    ExceptionCover c = dis2_cover(f.eval, f.ambient, d, cfg);
    detail += " " + fmt("%.4f", c.total_volume.get_d());
    if (c.total_volume < Rational(45, 100)) big = false;
  }
  DecisionReport rep = decide_k_integrability(f.eval, f.ambient, {6, 8, 10}, f.claimed_bound, cfg);
  DarbouxSums coarse = darboux(f, 256, 16), fine = darboux(f, 4096, 16);
  detail += "; verdict " + to_string(rep.verdict) + "; darboux gap " + fmt("%.5f", coarse.gap()) + " -> " + fmt("%.5f", fine.gap());
  return {big && rep.verdict == IntegrabilityVerdict::not_integrable_evidence && fine.gap() < coarse.gap(), detail};
}

Outcome c7() {
  LimitConfig cfg = default_limit_config();
  IntegrandSpec sheet = fixture_spec("gallery:thomae-sheet");
  DecisionReport a = decide_k_integrability(sheet.eval, sheet.ambient, {4, 5, 6}, sheet.claimed_bound, cfg);
  IntegrandSpec rot = fixture_spec("gallery:rotated_thomae");
  DecisionReport b = decide_k_integrability(rot.eval, rot.ambient, {4, 5, 6}, rot.claimed_bound, cfg);

  // points g(u, v) with u rational: the image of a vertical rational line
  const gallery::Rotation g = gallery::pythagorean_rotation(3, 4);
  std::size_t probed = 0, second = 0;
  const long us[][2] = {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}, {1, 5}, {2, 5}, {1, 6}, {5, 7}, {3, 8}, {4, 9}, {7, 10}};
  const long vs[][2] = {{1, 2}, {1, 3}, {3, 5}, {2, 7}};
  for (std::size_t i = 0; i < std::size(us); ++i) {
    const Rational u(us[i][0], us[i][1]), v(vs[i % 4][0], vs[i % 4][1]);
    Point p{u * g.cos - v * g.sin, u * g.sin + v * g.cos};
    for (auto& c : p) c.canonicalize();
    ++probed;
    if (classify(rot.eval, rot.ambient, p, cfg).kind == PointKind::second_kind_suspect) ++second;
  }
  return {a.verdict == IntegrabilityVerdict::likely_integrable &&
              b.verdict == IntegrabilityVerdict::not_integrable_evidence && second >= 10,
          "thomae-sheet " + to_string(a.verdict) + ", rotated " + to_string(b.verdict) + ", " + std::to_string(second) +
              "/" + std::to_string(probed) + " rotated-line points second_kind_suspect"};
}

Outcome c8() {
  IntegrandSpec h = fixture_spec("gallery:h_fixture?k=8");
  gallery::CantorSine f(8);
  Rng rng = stream(108, 0);
  double worst = 0;
  const auto removed = f.intervals();
  for (int i = 0; i < 50; ++i) {
    // half the samples inside removed intervals, where f oscillates
    Rational x;
    if (i % 2) {
      const auto& iv = removed[rng() % removed.size()];
      x = random_dyadic(Interval::open(iv.a, iv.b), rng, 24);
    } else {
      x = random_dyadic(Interval::closed(0, 1), rng, 24);
    }
    const double inner = inner_integral(h, {x}, 512).get_d();
    worst = std::max(worst, std::abs(inner - (f(x) + 2)));
  }
  IntegrandSpec outer = inner_integrand(h, 1, 512);
  outer.claimed_bound = Rational(4);
  DecisionReport rep = decide_k_integrability(outer.eval, outer.ambient, {4, 6, 8}, outer.claimed_bound, default_limit_config());
  return {worst <= 1e-2 && rep.verdict == IntegrabilityVerdict::not_integrable_evidence,
          "max |inner - (f+2)| " + fmt("%.5f", worst) + " over 50 x; outer verdict " + to_string(rep.verdict)};
}

Outcome c9() {
  IntegrandSpec f;
  f.ambient = unit_cube(2);
  f.eval = [](const Point& x) { return Rational(x[0] * x[1]).get_d() + (x[0] == Rational(1, 2) ? 1e6 : 0.0); };
  IntegrandSpec t = truncate(f, 1);
  IntegrateOptions o;
  // odd m put cell centers on the line x = 1/2
  o.schedule = {3, 9, 27, 81, 243};
  o.tol = Rational(1, 100);
  IntegrateResult a = k_integrate(t, o);
  IntegrateResult b = k_integrate(xy_spec(), o);
  const Rational diff = abs(a.value - b.value);
  const Rational tol = a.error_bound + b.error_bound;
  bool spike_seen = a.range_hi >= 1;
  return {a.reached && b.reached && spike_seen && diff <= tol,
          "|diff| " + fmt("%.5f", diff.get_d()) + " <= " + fmt("%.5f", tol.get_d()) + " (m=" + std::to_string(a.m) +
              ", truncated spike sampled: " + (spike_seen ? "yes" : "no") + ")"};
}

Outcome c10() {
  DerivOptions o = default_deriv_options();
  IndefiniteIntegral psi_xy = make_psi(xy_spec());
  Rng rng = stream(110, 0);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    Point u = random_point(closed_brick({{Rational(1, 10), Rational(9, 10)}, {Rational(1, 10), Rational(9, 10)}}), rng);
    Reconstruction r = reconstruct(psi_xy, u, o);
    worst = std::max(worst, r.converged ? std::abs(r.value - Rational(u[0] * u[1]).get_d()) : 1.0);
  }
  IndefiniteIntegral psi_step = make_psi(fixture_spec("gallery:step_edge"));
  const Point half{Rational(1, 2)};
  DerivativeEstimate full = strong_derivative(psi_step, half, o);
  DerivativeEstimate left = directional_strong_derivative(psi_step, half, {-1}, o);
  DerivativeEstimate right = directional_strong_derivative(psi_step, half, {1}, o);
  const bool one_sided = left.stable && right.stable && std::abs(left.value) < 1e-2 && std::abs(right.value - 1) < 1e-2;
  return {worst < 1e-2 && !full.stable && one_sided,
          "x*y worst reconstruction error " + fmt("%.2e", worst) + "; step at 1/2: strong " +
              (full.stable ? "stable" : "unstable") + " (spread " + fmt("%.3f", full.spread) + "), left " +
              fmt("%.4f", left.value) + (left.stable ? " stable" : " unstable") + ", right " + fmt("%.4f", right.value) +
              (right.stable ? " stable" : " unstable")};
}

Outcome c11() {
  const Rational c(1, 1000000);
  // f1 = x*y and f2 = f1 + indicator of the segment x = 1/3, which is Jordan
  // null; Psi is computed from midpoint sums that never land on the segment
  IntegrandSpec f1 = xy_spec();
  IntegrandSpec f2 = f1;
  f2.eval = [](const Point& x) { return Rational(x[0] * x[1]).get_d() + (x[0] == Rational(1, 3) ? 1.0 : 0.0); };
  f2.claimed_bound = Rational(2);
  IndefiniteIntegral p1 = make_psi(f1), p2 = make_psi(f2);
  AdditiveSetFunction phi{[p1, p2](const Brick& s) { return p2.value(s).value - p1.value(s).value; }, Rational(1)};
  const Rational eps = c / 4;  // total cover volume must stay below c / (2L)
  std::vector<Brick> cover{Brick({Interval::open(Rational(1, 3) - eps / 2, Rational(1, 3) + eps / 2), Interval::open(Rational(-1, 1000), Rational(1001, 1000))})};
  Gauge fine = [](const Point&) { return 1.0 / 16; };
  AuditResult good = zero_derivative_audit(phi, cover, unit_cube(2), c, fine);

  // one-dimensional point exception with a gauge that shrinks toward it
  IntegrandSpec g1;
  g1.ambient = unit_cube(1);
  g1.eval = [](const Point& x) { return x[0].get_d(); };
  IntegrandSpec g2 = g1;
  g2.eval = [](const Point& x) { return x[0].get_d() + (x[0] == Rational(1, 3) ? 5.0 : 0.0); };
  IndefiniteIntegral q1 = make_psi(g1), q2 = make_psi(g2);
  AdditiveSetFunction phi1{[q1, q2](const Brick& s) { return q2.value(s).value - q1.value(s).value; }, Rational(5)};
  const Rational eps1 = c / 20;
  std::vector<Brick> cover1{Brick({Interval::open(Rational(1, 3) - eps1 / 2, Rational(1, 3) + eps1 / 2)})};
  Gauge toward = [](const Point& x) { return std::max(1e-9, std::abs(x[0].get_d() - 1.0 / 3) / 2); };
  AuditResult good1 = zero_derivative_audit(phi1, cover1, unit_cube(1), c, toward, 40);

  AdditiveSetFunction lambda{[](const Brick& s) { return volume(s).get_d(); }, Rational(1)};
  AuditResult bad = zero_derivative_audit(lambda, cover, unit_cube(2), c, fine);
  return {good.certified && good1.certified && !bad.certified,
          std::string("segment audit ") + (good.certified ? "certified" : "rejected: " + good.reason) + " over " +
              std::to_string(good.cells_in_h + good.cells_off_h) + " cells, point audit " +
              (good1.certified ? "certified" : "rejected: " + good1.reason) + ", Phi = lambda " +
              (bad.certified ? "certified (wrong)" : "rejected") + " (sum off H " + fmt("%.3f", bad.sum_off_h) + ")"};
}

Outcome c12() {
  struct Pair {
    const char* text;
    const char* fixture;
  };
  const Pair pairs[] = {
      {"if x1 > 1/2 then 1 else 0", "step_edge"},
      {"(if x1 > 1/2 then 1 else 0) + 2 * (if x2 > 1/2 then 1 else 0)", "first_kind_2d"},
      {"if x1 == 1/2 then 0 else sin(1 / (x1 - 1/2))", "sin_recip"},
      {"if x1 + x2 <= 1 then 1 else 0", "triangle"},
      {"gallery:thomae", "thomae"},
      {"2 * gallery:f_prop41c?k=6 - gallery:f_prop41c?k=6", "f_prop41c?k=6"},
  };
  Rng rng = stream(112, 0);
  std::size_t eval_bad = 0;
  for (const auto& pr : pairs) {
    dsl::FunctionSpec spec = dsl::parse(pr.text);
    gallery::Fixture fx = gallery::make_fixture(pr.fixture);
    for (int i = 0; i < 100; ++i) {
      // include points on the features the fixtures branch on
      Point x = random_point(fx.ambient, rng, 6);
      double a = dsl::eval(spec, x), b = fx.eval(x);
      if (!(std::abs(a - b) <= 1e-12)) ++eval_bad;
    }
  }

  // round trip on generated trees
  std::size_t trip_bad = 0;
  std::function<dsl::ExprPtr(int)> gen_expr;
  std::function<dsl::CondPtr(int)> gen_cond = [&](int depth) {
    auto c = std::make_shared<dsl::Cond>();
    const unsigned pick = depth <= 0 ? 0 : rng() % 4;
    if (pick == 0) {
      c->kind = dsl::Cond::Kind::compare;
      c->cmp = static_cast<dsl::Cmp>(rng() % 6);
      c->lhs = gen_expr(depth - 1);
      c->rhs = gen_expr(depth - 1);
    } else if (pick == 3) {
      c->kind = dsl::Cond::Kind::negate;
      c->a = gen_cond(depth - 1);
    } else {
      c->kind = pick == 1 ? dsl::Cond::Kind::conj : dsl::Cond::Kind::disj;
      c->a = gen_cond(depth - 1);
      c->b = gen_cond(depth - 1);
    }
    return dsl::CondPtr(c);
  };
  gen_expr = [&](int depth) {
    auto e = std::make_shared<dsl::Expr>();
    const unsigned pick = depth <= 0 ? rng() % 3 : rng() % 10;
    static const char* unary[] = {"sin", "cos", "tan", "exp", "log", "sqrt", "abs"};
    static const char* decimals[] = {"0.5", "1.25", "3e-2", "2.5E+1", ".75"};
    switch (pick) {
      case 0:
        e->kind = dsl::Expr::Kind::literal;
        e->value = Rational(static_cast<long>(rng() % 20), static_cast<long>(rng() % 6 + 1));
        e->value.canonicalize();
        break;
      case 1:
        e->kind = dsl::Expr::Kind::variable;
        e->index = 1 + rng() % 3;
        break;
      case 2:
        e->kind = dsl::Expr::Kind::literal;
        e->decimal = true;
        e->text = decimals[rng() % 5];
        e->value = parse_rational(e->text);
        break;
      case 3:
        e->kind = dsl::Expr::Kind::negate;
        e->args = {gen_expr(depth - 1)};
        break;
      case 4:
      case 5:
      case 6: {
        static const dsl::Expr::Kind ops[] = {dsl::Expr::Kind::add, dsl::Expr::Kind::sub, dsl::Expr::Kind::mul,
                                              dsl::Expr::Kind::div};
        e->kind = ops[rng() % 4];
        e->args = {gen_expr(depth - 1), gen_expr(depth - 1)};
        break;
      }
      case 7:
        e->kind = dsl::Expr::Kind::call;
        if (rng() % 3 == 0) {
          e->text = rng() % 2 ? "min" : "max";
          const std::size_t n = 2 + rng() % 2;
          for (std::size_t i = 0; i < n; ++i) e->args.push_back(gen_expr(depth - 1));
        } else {
          e->text = unary[rng() % 7];
          e->args = {gen_expr(depth - 1)};
        }
        break;
      default:
        e->kind = dsl::Expr::Kind::piecewise;
        e->cond = gen_cond(depth - 1);
        e->args = {gen_expr(depth - 1), gen_expr(depth - 1)};
        break;
    }
    return dsl::ExprPtr(e);
  };
  dsl::ParseOptions po;
  po.precision = 0;
  for (int i = 0; i < 200; ++i) {
    dsl::ExprPtr e = gen_expr(1 + i % 6);
    const std::string text = dsl::print(*e);
    try {
      dsl::ExprPtr back = dsl::parse_expr(text, po);
      if (!(*back == *e) || dsl::print(*back) != text) ++trip_bad;
    } catch (const Error&) {
      ++trip_bad;
    }
  }

  struct Bad {
    const char* text;
    std::size_t line, column;
  };
  const Bad bad[] = {{"x1 +", 1, 5}, {"x1 * (x2 - 1", 1, 13}, {"sin(x1, x2)", 1, 1}, {"foo(x1)", 1, 1},
                     {"if x1 < 1 then 2", 1, 17}, {"x1 +\n  * 2", 2, 3}, {"3 $ 4", 1, 3}, {"x0 + 1", 1, 1}};
  std::size_t pos_bad = 0;
  for (const auto& b : bad) {
    try {
      dsl::parse(b.text);
      ++pos_bad;
    } catch (const dsl::ParseError& e) {
      if (e.line != b.line || e.column != b.column) ++pos_bad;
    }
  }
  return {eval_bad == 0 && trip_bad == 0 && pos_bad == 0,
          std::to_string(eval_bad) + " eval mismatches in 600, " + std::to_string(trip_bad) +
              " round-trip failures in 200, " + std::to_string(pos_bad) + " mispositioned errors in " +
              std::to_string(std::size(bad))};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"step integral independent of representation", c1},
      {"step integral sign and bound", c2},
      {"k_integrate and fubini on x*y", c3},
      {"triangle integral within content bounds", c4},
      {"Cousin partitions for random gauges", c5},
      {"f_prop41c: second-kind cover and Darboux trend", c6},
      {"Thomae sheet versus rotated Thomae", c7},
      {"h_fixture: inner integrals and outer verdict", c8},
      {"truncation of x*y plus a spike", c9},
      {"strong derivatives and reconstruction", c10},
      {"zero-derivative audit", c11},
      {"DSL evaluation, round trip, error positions", c12},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i + 1) != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu: %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                elapsed(t0));
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
