#include "brickint/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "brickint/sampling.hpp"

namespace brickint {

namespace {
constexpr unsigned kDeviationProbes = 64;
}

StepFunction sample_step(const IntegrandSpec& f, unsigned m, const Rational& precision) {
  GridIndex g(f.ambient, m);
  StepFunction out(f.ambient);
  out.terms.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    Point c = g.center(i);
    double v = f.eval(c);
    if (!std::isfinite(v)) throw EvaluationError("non-finite value at " + to_string(c));
    Rational q = round_to_grid(v, precision);
    if (q != 0) out.terms.push_back({std::move(q), g.cell(i)});
  }
  return out;
}

Rational midpoint_integral(const IntegrandSpec& f, unsigned m, const Rational& precision, Exec exec) {
  GridIndex g(f.ambient, m);
  return midpoint_sum(f.eval, g, precision, exec).integral(g, precision);
}

std::vector<unsigned> default_schedule() { return {8, 16, 32, 64, 128, 256, 512}; }

IntegrateResult k_integrate(const IntegrandSpec& f, const IntegrateOptions& opts) {
  if (opts.schedule.empty()) throw Error("k_integrate: empty schedule");
  if (opts.tol <= 0) throw Error("k_integrate: tolerance must be positive");
  for (std::size_t i = 1; i < opts.schedule.size(); ++i)
    if (opts.schedule[i] <= opts.schedule[i - 1]) throw Error("k_integrate: schedule must increase");

  IntegrateResult r;
  double lo = INFINITY, hi = -INFINITY;
  std::vector<Rational> deviation;  // observed sup |g_m - f| off the cover, per position
  std::vector<ExceptionCover> covers;

  // entries from position 2 on with strictly decreasing delta; tail sups are
  // twice the largest deviation seen from that position to the last one run
  auto finish = [&]() {
    r.certificate.schedule.clear();
    for (std::size_t i = 1; i < r.history.size(); ++i) {
      Rational tail = 0;
      for (std::size_t j = i; j < r.history.size(); ++j) tail = std::max<Rational>(tail, 2 * deviation[j]);
      const unsigned m = r.history[i].m;
      Rational cells = 1;
      for (std::size_t k = 0; k < f.ambient.dim(); ++k) cells *= m;
      Rational delta = covers[i].total_volume + 1 / (cells * m);
      if (r.certificate.schedule.empty() || delta < r.certificate.schedule.back().delta)
        r.certificate.schedule.push_back({delta, covers[i], i + 1, tail});
    }
  };

  for (std::size_t i = 0; i < opts.schedule.size(); ++i) {
    const unsigned m = opts.schedule[i];
    GridIndex g(f.ambient, m);
    MidpointSum s = midpoint_sum(f.eval, g, opts.precision, opts.exec);
    lo = std::min(lo, s.min_value);
    hi = std::max(hi, s.max_value);

    IntegrationStep step;
    step.m = m;
    step.value = s.integral(g, opts.precision);
    ExceptionCover cover;
    if (f.support) cover = boundary_cells_grid(f.support, f.ambient, m, opts.exec);
    step.cover_volume = cover.total_volume;

    Rational dev = 0;
    Rng rng = stream(m, i);
    for (unsigned k = 0; k < kDeviationProbes; ++k) {
      Point x = random_point(f.ambient, rng);
      if (cover.contains(x)) continue;
      double v;
      try {
        v = f.eval(x);
      } catch (const EvaluationError&) {
        continue;
      }
      const Rational gm = round_to_grid(f.eval(g.center(g.locate(x))), opts.precision);
      dev = std::max<Rational>(dev, abs(gm - round_to_grid(v, opts.precision)));
    }
    deviation.push_back(dev);
    covers.push_back(std::move(cover));

    Rational c = f.claimed_bound ? *f.claimed_bound : Rational(from_double(std::max(std::abs(lo), std::abs(hi))));
    Rational osc = from_double(hi - lo);
    if (osc > 2 * c) osc = 2 * c;
    r.bound_used = c;
    // g_m takes rounded center values
    r.certificate.uniform_bound = f.claimed_bound ? c : c + opts.precision;

    if (i > 0) step.bound = abs(step.value - r.history.back().value) + osc * step.cover_volume;
    r.history.push_back(step);
    r.value = step.value;
    r.m = m;
    r.terms_used = i + 1;
    r.error_bound = step.bound;
    r.range_lo = lo;
    r.range_hi = hi;
    if (i > 0 && step.bound <= opts.tol) {
      r.reached = true;
      finish();
      return r;
    }
  }
  if (opts.schedule.size() == 1) r.error_bound = Rational(from_double(hi - lo)) * volume(f.ambient);
  finish();
  return r;
}

namespace {

Rational integrate_axes(const IntegrandSpec& f, Point& x, std::size_t k, unsigned m, const Rational& precision) {
  const auto& a = f.ambient[k];
  const Rational w = a.length() / m;
  Rational sum = 0;
  if (k + 1 == f.ambient.dim()) {
    mpz_class units = 0;
    for (unsigned j = 0; j < m; ++j) {
      x[k] = a.lo + w * (2 * j + 1) / 2;
      double v = f.eval(x);
      if (!std::isfinite(v)) throw EvaluationError("non-finite value at " + to_string(x));
      units += round_units(v, precision);
    }
    sum = Rational(units) * precision;
  } else {
    for (unsigned j = 0; j < m; ++j) {
      x[k] = a.lo + w * (2 * j + 1) / 2;
      sum += integrate_axes(f, x, k + 1, m, precision);
    }
  }
  Rational out = sum * w;
  out.canonicalize();
  return out;
}

}  // namespace

Rational fubini(const IntegrandSpec& f, unsigned m, const Rational& precision) {
  if (m == 0) throw Error("fubini: m must be positive");
  Point x(f.ambient.dim());
  return integrate_axes(f, x, 0, m, precision);
}

Rational inner_integral(const IntegrandSpec& f, const Point& prefix, unsigned m, const Rational& precision) {
  if (m == 0) throw Error("inner_integral: m must be positive");
  if (prefix.size() >= f.ambient.dim()) throw Error("inner_integral: prefix leaves no axis to integrate");
  Point x(f.ambient.dim());
  std::copy(prefix.begin(), prefix.end(), x.begin());
  return integrate_axes(f, x, prefix.size(), m, precision);
}

IntegrandSpec inner_integrand(const IntegrandSpec& f, std::size_t k, unsigned m, const Rational& precision) {
  if (k == 0 || k >= f.ambient.dim()) throw Error("inner_integrand: need 1 <= k < dimension");
  IntegrandSpec out;
  out.ambient.factors.assign(f.ambient.factors.begin(), f.ambient.factors.begin() + static_cast<long>(k));
  out.eval = [f, m, precision](const Point& x) { return inner_integral(f, x, m, precision).get_d(); };
  return out;
}

DarbouxSums darboux(const IntegrandSpec& f, unsigned m, unsigned samples_per_cell, std::uint64_t seed, Exec exec) {
  GridIndex g(f.ambient, m);
  auto ext = cell_extrema(f.eval, g, samples_per_cell, seed, exec);
  // fixed-order reduction so serial and parallel runs agree bit for bit
  long double lo = 0, hi = 0;
  for (const auto& e : ext) {
    lo += e.lo;
    hi += e.hi;
  }
  const long double cv = g.cell_volume().get_d();
  return {static_cast<double>(lo * cv), static_cast<double>(hi * cv), m};
}

IntegrandSpec truncate(const IntegrandSpec& f, const Rational& c) {
  if (c <= 0) throw Error("truncate: C must be positive");
  IntegrandSpec out = f;
  const double cd = c.get_d();
  out.eval = [inner = f.eval, cd](const Point& x) { return std::clamp(inner(x), -cd, cd); };
  out.claimed_bound = c;
  return out;
}

IntegrandSpec extend(const IntegrandSpec& f, const Brick& d) {
  if (!subset(f.ambient, d)) throw Error("extend: " + format_brick(f.ambient) + " is not inside " + format_brick(d));
  IntegrandSpec out;
  out.ambient = d;
  const Brick t = f.ambient;
  out.eval = [t, inner = f.eval](const Point& x) { return t.contains(x) ? inner(x) : 0.0; };
  if (f.support)
    out.support = [t, s = f.support](const Point& x) { return t.contains(x) && s(x); };
  else
    out.support = [t](const Point& x) { return t.contains(x); };
  out.claimed_bound = f.claimed_bound;
  return out;
}

}  // namespace brickint
