#include "brickint/indefinite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brickint/sampling.hpp"

namespace brickint {

PsiValue psi(const IntegrandSpec& f, const Brick& s, const PsiOptions& opts) {
  if (s.dim() != f.ambient.dim()) throw Error("psi: dimension mismatch");
  if (!subset(s, f.ambient.closure())) throw Error("psi: " + format_brick(s) + " is not inside " + format_brick(f.ambient));
  const Rational vol = volume(s);
  if (vol == 0) return {0, 0};
  IntegrandSpec sub = f;
  sub.ambient = s.closure();
  IntegrateOptions io;
  io.precision = opts.precision;
  io.schedule.clear();
  const std::size_t n = s.dim();
  for (unsigned m = 8; m <= 4096; m *= 2) {
    std::size_t cells = 1;
    for (std::size_t k = 0; k < n; ++k) cells *= m;
    if (cells > opts.max_cells) break;
    io.schedule.push_back(m);
  }
  if (io.schedule.size() < 2) io.schedule = {2, 4};
  io.tol = from_double(opts.rel_tol) * vol;
  io.exec = io.schedule.back() >= 64 ? Exec::parallel : Exec::serial;
  IntegrateResult r = k_integrate(sub, io);
  return {r.value.get_d(), r.error_bound.get_d()};
}

IndefiniteIntegral make_psi(const IntegrandSpec& f, const PsiOptions& opts) {
  return {f.ambient, [f, opts](const Brick& s) { return psi(f, s, opts); }};
}

DerivOptions default_deriv_options() {
  DerivOptions o;
  for (unsigned k = 3; k <= 10; ++k) o.radii.push_back(pow2_inverse(k));
  return o;
}

namespace {

// fraction strictly inside (0, 1)
Rational unit_fraction(Rng& rng) { return random_dyadic(Interval::open(0, 1), rng, 16); }

struct Window {
  Rational lo, hi;  // available extent left/right of u on one axis
};

// Closed probe brick inside the windows around u. kind 0: contains u,
// kind 1: contains u with skewed extents, kind 2: misses u along one axis.
Brick probe_brick(const Point& u, const std::vector<Window>& w, unsigned kind, Rng& rng) {
  const std::size_t n = u.size();
  Brick b;
  std::uniform_int_distribution<unsigned> skew(0, 8), coin(0, 1);
  std::uniform_int_distribution<std::size_t> pick_axis(0, n - 1);
  const std::size_t miss_axis = pick_axis(rng);
  // one long axis, the others shrunk by up to 2^8
  const std::size_t long_axis = pick_axis(rng);
  for (std::size_t k = 0; k < n; ++k) {
    Rational left = w[k].lo * unit_fraction(rng);
    Rational right = w[k].hi * unit_fraction(rng);
    if (kind == 1) {
      Rational shrink = pow2_inverse(skew(rng));
      if (n == 1 || k != long_axis) {
        if (coin(rng))
          left *= shrink;
        else
          right *= shrink;
      }
    }
    Interval f = Interval::closed(u[k] - left, u[k] + right);
    if (kind == 2 && k == miss_axis) {
      bool go_right = w[k].hi > 0 && (w[k].lo == 0 || coin(rng));
      const Rational& reach = go_right ? w[k].hi : w[k].lo;
      Rational a = reach * unit_fraction(rng), c = reach * unit_fraction(rng);
      if (a > c) std::swap(a, c);
      if (a == c) c = (a + reach) / 2;
      f = go_right ? Interval::closed(u[k] + a, u[k] + c) : Interval::closed(u[k] - c, u[k] - a);
    }
    f.lo.canonicalize();
    f.hi.canonicalize();
    if (f.degenerate()) f.hi += w[k].hi > 0 ? w[k].hi / 2 : Rational(0);
    b.factors.push_back(std::move(f));
  }
  return b;
}

std::vector<Window> windows(const Brick& t, const Point& u, const Rational& r, const Direction* alpha) {
  std::vector<Window> w;
  for (std::size_t k = 0; k < t.dim(); ++k) {
    // the closed probe must stay inside the open ball: shrink the reach a bit
    Rational lo = std::min<Rational>(r, u[k] - t[k].lo) * Rational(255, 256);
    Rational hi = std::min<Rational>(r, t[k].hi - u[k]) * Rational(255, 256);
    if (alpha) {
      if ((*alpha)[k] > 0) lo = 0;
      if ((*alpha)[k] < 0) hi = 0;
    }
    w.push_back({lo, hi});
  }
  return w;
}

Brick probe_in_orthant(const Point& u, const std::vector<Window>& w, const Direction& alpha, unsigned kind, Rng& rng) {
  Brick b;
  std::uniform_int_distribution<unsigned> skew(0, 8);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const Rational& reach = alpha[k] > 0 ? w[k].hi : w[k].lo;
    Rational a = kind == 0 ? Rational(0) : reach * unit_fraction(rng);
    Rational c = reach * unit_fraction(rng);
    if (a > c) std::swap(a, c);
    if (kind == 1) c = a + (c - a) * pow2_inverse(skew(rng));
    if (a == c) c = (a + reach) / 2;
    Interval f = alpha[k] > 0 ? Interval::closed(u[k] + a, u[k] + c) : Interval::closed(u[k] - c, u[k] - a);
    f.lo.canonicalize();
    f.hi.canonicalize();
    b.factors.push_back(std::move(f));
  }
  return b;
}

void check_interior(const Brick& t, const Point& u) {
  if (u.size() != t.dim()) throw Error("point dimension mismatch");
  for (std::size_t k = 0; k < t.dim(); ++k)
    if (!(t[k].lo < u[k] && u[k] < t[k].hi)) throw Error("point " + to_string(u) + " is not interior");
}

template <class MakeProbe>
DerivativeEstimate ratio_scan(const IndefiniteIntegral& psi, const DerivOptions& opts, MakeProbe make) {
  if (opts.radii.empty()) throw Error("empty radius schedule");
  DerivativeEstimate est;
  Rng rng = stream(opts.seed, 0xd3e);
  for (const auto& r : opts.radii) {
    RatioRow row;
    row.radius = r;
    row.min = std::numeric_limits<double>::infinity();
    row.max = -row.min;
    long double sum = 0;
    for (unsigned i = 0; i < opts.probes; ++i) {
      Brick s = make(r, i % 3, rng);
      const double vol = volume(s).get_d();
      if (!(vol > 0)) continue;
      double ratio = psi.value(s).value / vol;
      row.min = std::min(row.min, ratio);
      row.max = std::max(row.max, ratio);
      sum += ratio;
      ++row.count;
    }
    if (row.count == 0) throw Error("no positive-volume probes at radius " + to_string(r));
    row.mean = static_cast<double>(sum / row.count);
    est.rows.push_back(row);
  }
  const auto& last = est.rows.back();
  est.value = last.mean;
  est.radius_used = last.radius.get_d();
  est.spread = last.max - last.min;
  est.stable = est.spread < opts.tol;
  return est;
}

}  // namespace

DerivativeEstimate strong_derivative(const IndefiniteIntegral& psi, const Point& u, const DerivOptions& opts) {
  check_interior(psi.ambient, u);
  return ratio_scan(psi, opts, [&](const Rational& r, unsigned kind, Rng& rng) {
    return probe_brick(u, windows(psi.ambient, u, r, nullptr), kind, rng);
  });
}

DerivativeEstimate directional_strong_derivative(const IndefiniteIntegral& psi, const Point& u, const Direction& alpha,
                                                 const DerivOptions& opts) {
  check_interior(psi.ambient, u);
  if (alpha.size() != u.size()) throw Error("direction dimension mismatch");
  for (int a : alpha)
    if (a != 1 && a != -1) throw Error("directional strong derivative needs alpha in {-1,1}^n");
  return ratio_scan(psi, opts, [&](const Rational& r, unsigned kind, Rng& rng) {
    return probe_in_orthant(u, windows(psi.ambient, u, r, &alpha), alpha, kind, rng);
  });
}

Reconstruction reconstruct(const IndefiniteIntegral& psi, const Point& x, const DerivOptions& opts) {
  check_interior(psi.ambient, x);
  DerivativeEstimate est = ratio_scan(psi, opts, [&](const Rational& r, unsigned kind, Rng& rng) {
    return probe_brick(x, windows(psi.ambient, x, r, nullptr), kind, rng);
  });
  Reconstruction out;
  for (const auto& row : est.rows) out.sup_by_radius.emplace_back(row.radius, row.max);
  out.value = est.rows.back().max;
  if (est.rows.size() >= 2) {
    double d = std::abs(est.rows.back().max - est.rows[est.rows.size() - 2].max);
    out.converged = d < opts.tol;
    if (!out.converged) out.note = "sup ratios still move by " + std::to_string(d) + " at the last radius";
  } else {
    out.converged = true;
  }
  out.note += out.note.empty() ? "" : "; ";
  out.note += "sup taken over probed bricks only (may underestimate)";
  return out;
}

PsiCheckReport check_theorem54(const IndefiniteIntegral& psi, unsigned trials, const DerivOptions& opts) {
  const Brick& t = psi.ambient;
  const std::size_t n = t.dim();
  PsiCheckReport rep;
  Rng rng = stream(opts.seed, 0x54);

  for (unsigned i = 0; i < trials; ++i) {
    Brick s;
    for (std::size_t k = 0; k < n; ++k) {
      Rational a = random_dyadic(t[k], rng, 12), b = random_dyadic(t[k], rng, 12);
      if (a > b) std::swap(a, b);
      if (a == b) b = (a + t[k].hi) / 2;
      s.factors.push_back(Interval::closed(a, b));
    }
    PsiValue whole = psi.value(s);
    const double vol = volume(s).get_d();
    if (vol > 0) rep.lipschitz_L = std::max(rep.lipschitz_L, std::abs(whole.value) / vol);
    std::uniform_int_distribution<std::size_t> axis(0, n - 1);
    const std::size_t k = axis(rng);
    Rational cut = random_dyadic(Interval::open(s[k].lo, s[k].hi), rng, 12);
    Brick left = s, right = s;
    left[k].hi = cut;
    right[k].lo = cut;
    PsiValue l = psi.value(left), r = psi.value(right);
    double residual = std::abs(whole.value - l.value - r.value);
    double allowed = whole.error_bound + l.error_bound + r.error_bound + 1e-12;
    rep.additivity_max_residual = std::max(rep.additivity_max_residual, residual);
    rep.additivity_max_allowed = std::max(rep.additivity_max_allowed, allowed);
    if (residual > allowed) rep.additive_within_bounds = false;
  }

  // interior points of the 2^-6 grid; all of them when few, else a sample
  const unsigned g = 64;
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= (g - 1);
  std::vector<std::size_t> chosen;
  if (total <= trials) {
    for (std::size_t i = 0; i < total; ++i) chosen.push_back(i);
  } else {
    std::uniform_int_distribution<std::size_t> any(0, total - 1);
    std::size_t mid = 0;
    for (std::size_t k = 0; k < n; ++k) mid = mid * (g - 1) + (g / 2 - 1);
    chosen.push_back(mid);
    while (chosen.size() < trials) chosen.push_back(any(rng));
  }
  const Rational final_r = opts.radii.back();
  std::size_t stable = 0, dir_stable = 0;
  for (std::size_t code : chosen) {
    Point u(n);
    std::size_t rest = code;
    for (std::size_t k = n; k-- > 0;) {
      unsigned j = static_cast<unsigned>(rest % (g - 1)) + 1;
      rest /= (g - 1);
      u[k] = t[k].lo + t[k].length() * j / g;
      u[k].canonicalize();
    }
    if (strong_derivative(psi, u, opts).stable) {
      ++stable;
    } else {
      rep.unstable_points.push_back(u);
      Brick cube;
      for (std::size_t k = 0; k < n; ++k)
        cube.factors.push_back(Interval::closed(std::max<Rational>(t[k].lo, u[k] - final_r), std::min<Rational>(t[k].hi, u[k] + final_r)));
      rep.unstable_cover.add(std::move(cube));
    }
    bool all_dir = true;
    for (const auto& alpha : orthant_directions(n))
      if (!directional_strong_derivative(psi, u, alpha, opts).stable) {
        all_dir = false;
        break;
      }
    if (all_dir)
      ++dir_stable;
    else
      rep.directional_unstable_points.push_back(u);
  }
  rep.points = chosen.size();
  rep.derivative_coverage = static_cast<double>(stable) / static_cast<double>(chosen.size());
  rep.directional_coverage = static_cast<double>(dir_stable) / static_cast<double>(chosen.size());
  return rep;
}

}  // namespace brickint
