#include "brickint/directional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brickint/sampling.hpp"

namespace brickint {

std::vector<Direction> all_directions(std::size_t n) {
  std::vector<Direction> out;
  Direction a(n, -1);
  for (;;) {
    if (std::any_of(a.begin(), a.end(), [](int v) { return v != 0; })) out.push_back(a);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (a[k] < 1) {
        ++a[k];
        break;
      }
      a[k] = -1;
      if (k == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::vector<Direction> orthant_directions(std::size_t n) {
  std::vector<Direction> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Direction a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = ((mask >> (n - 1 - k)) & 1) ? 1 : -1;
    out.push_back(a);
  }
  return out;
}

std::string format_direction(const Direction& a) {
  std::string s = "(";
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k) s += ",";
    s += a[k] > 0 ? "+1" : (a[k] < 0 ? "-1" : "0");
  }
  return s + ")";
}

namespace {

void check_direction(const Brick& t, const Point& x, const Direction& alpha) {
  if (alpha.size() != t.dim() || x.size() != t.dim()) throw Error("direction/point dimension mismatch");
  bool nonzero = false;
  for (int v : alpha) {
    if (v < -1 || v > 1) throw Error("direction components must be -1, 0 or 1");
    nonzero |= v != 0;
  }
  if (!nonzero) throw Error("direction must be nonzero");
  for (std::size_t k = 0; k < t.dim(); ++k)
    if (!(t[k].lo < x[k] && x[k] < t[k].hi))
      throw Error("point " + to_string(x) + " is not interior to " + format_brick(t));
}

}  // namespace

Brick subbrick(const Brick& t, const Point& x, const Direction& alpha) {
  check_direction(t, x, alpha);
  Brick b;
  for (std::size_t k = 0; k < t.dim(); ++k) {
    if (alpha[k] > 0)
      b.factors.push_back({x[k], t[k].hi, false, t[k].hi_closed});
    else if (alpha[k] < 0)
      b.factors.push_back({t[k].lo, x[k], t[k].lo_closed, false});
    else
      b.factors.push_back(Interval::point(x[k]));
  }
  return b;
}

Brick closed_subbrick(const Brick& t, const Point& x, const Direction& alpha) {
  return subbrick(t, x, alpha).closure();
}

std::vector<Rational> default_radii() {
  std::vector<Rational> r;
  for (unsigned k = 3; k <= 12; ++k) r.push_back(pow2_inverse(k));
  return r;
}

LimitConfig default_limit_config() {
  LimitConfig c;
  c.radii = default_radii();
  return c;
}

namespace {

// Points of T_{x,alpha} inside the open ball of radius r: Latin-hypercube
// samples plus lattice probes along rational directions.
std::vector<Point> shell_points(const Brick& region, const Point& x, const Direction& alpha, const Rational& r,
                                const LimitConfig& cfg, Rng& rng) {
  std::vector<Point> pts = latin_hypercube(region, cfg.samples, rng);
  std::vector<std::size_t> axes;
  for (std::size_t k = 0; k < alpha.size(); ++k)
    if (alpha[k] != 0) axes.push_back(k);
  if (cfg.lattice >= 2) {
    const unsigned base = cfg.lattice - 1;
    std::size_t total = 1;
    for (std::size_t i = 0; i < axes.size(); ++i) total *= base;
    for (std::size_t code = 0; code < total; ++code) {
      Point p = x;
      std::size_t rest = code;
      for (std::size_t k : axes) {
        unsigned v = static_cast<unsigned>(rest % base) + 1;
        rest /= base;
        p[k] = x[k] + Rational(alpha[k]) * r * v / cfg.lattice;
        p[k].canonicalize();
      }
      if (region.contains(p)) pts.push_back(std::move(p));
    }
  }
  return pts;
}

}  // namespace

LimitEstimate directional_limit(const PointOracle& f, const Brick& t, const Point& x, const Direction& alpha,
                                const LimitConfig& cfg) {
  if (cfg.radii.empty()) throw Error("directional_limit: empty radius schedule");
  for (std::size_t i = 1; i < cfg.radii.size(); ++i)
    if (!(cfg.radii[i] < cfg.radii[i - 1])) throw Error("directional_limit: radii must strictly decrease");
  const Brick sub = subbrick(t, x, alpha);
  LimitEstimate est;
  Rng rng = stream(cfg.seed, 0x5eed);
  for (const auto& r : cfg.radii) {
    Brick ball;
    for (std::size_t k = 0; k < t.dim(); ++k) ball.factors.push_back(Interval::open(x[k] - r, x[k] + r));
    auto region = intersect(sub, ball);
    if (!region) throw Error("empty directional shell");
    RadiusRow row;
    row.radius = r;
    row.min = std::numeric_limits<double>::infinity();
    row.max = -row.min;
    long double sum = 0;
    for (const auto& p : shell_points(*region, x, alpha, r, cfg, rng)) {
      double v;
      try {
        v = f(p);
      } catch (const EvaluationError& e) {
        est.error = e.what();
        est.rows.push_back(row);
        return est;
      }
      if (!std::isfinite(v)) {
        est.error = "non-finite value at " + to_string(p);
        est.rows.push_back(row);
        return est;
      }
      sum += v;
      row.min = std::min(row.min, v);
      row.max = std::max(row.max, v);
      ++row.count;
    }
    row.mean = static_cast<double>(sum / static_cast<long double>(row.count));
    est.rows.push_back(row);
  }
  const auto& last = est.rows.back();
  est.value = last.mean;
  est.oscillation = last.oscillation();
  bool cauchy = est.rows.size() < 2 || std::abs(last.mean - est.rows[est.rows.size() - 2].mean) < cfg.tol;
  est.exists = est.oscillation < cfg.tol && cauchy;
  return est;
}

std::string to_string(PointKind k) {
  switch (k) {
    case PointKind::continuous: return "continuous";
    case PointKind::first_kind: return "first_kind";
    case PointKind::second_kind_suspect: return "second_kind_suspect";
    case PointKind::undetermined: return "undetermined";
  }
  return "undetermined";
}

Classification classify(const PointOracle& f, const Brick& t, const Point& x, const LimitConfig& cfg) {
  Classification c;
  try {
    double v = f(x);
    if (std::isfinite(v)) c.fx = v;
  } catch (const EvaluationError&) {
  }
  bool any_error = false, any_missing = false, all_match = true;
  std::size_t idx = 0;
  for (const auto& alpha : all_directions(t.dim())) {
    LimitConfig sub = cfg;
    sub.seed = splitmix64(cfg.seed + idx++);
    LimitEstimate est = directional_limit(f, t, x, alpha, sub);
    if (!est.error.empty())
      any_error = true;
    else if (!est.exists)
      any_missing = true;
    else if (!c.fx || std::abs(est.value - *c.fx) >= cfg.tol)
      all_match = false;
    c.per_direction.emplace_back(alpha, std::move(est));
  }
  if (any_missing)
    c.kind = PointKind::second_kind_suspect;
  else if (any_error || !c.fx)
    c.kind = PointKind::undetermined;
  else
    c.kind = all_match ? PointKind::continuous : PointKind::first_kind;
  return c;
}

bool second_kind_probe(const PointOracle& f, const Brick& t, const Point& x, const LimitConfig& cfg) {
  LimitConfig fine = cfg;
  if (fine.radii.size() > 2) fine.radii.erase(fine.radii.begin(), fine.radii.end() - 2);
  std::size_t idx = 0;
  for (const auto& alpha : all_directions(t.dim())) {
    fine.seed = splitmix64(cfg.seed + idx++);
    LimitEstimate est = directional_limit(f, t, x, alpha, fine);
    if (est.error.empty() && !est.exists) return true;
  }
  return false;
}

ExceptionCover dis2_cover(const PointOracle& f, const Brick& t, unsigned depth, const LimitConfig& cfg, Exec exec) {
  if (depth == 0 || depth > 20) throw Error("dis2_cover: depth must be in 1..20");
  GridIndex g(t, 1u << depth);
  std::vector<std::uint8_t> flag(g.size(), 0);
  for_each_index(
      g.size(),
      [&](std::size_t i) {
        LimitConfig local = cfg;
        local.seed = stream(cfg.seed, i)();
        flag[i] = second_kind_probe(f, t, g.center(i), local) ? 1 : 0;
      },
      exec);
  ExceptionCover cover;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (flag[i]) cover.add(g.cell(i).closure());
  return cover;
}

std::string to_string(IntegrabilityVerdict v) {
  switch (v) {
    case IntegrabilityVerdict::likely_integrable: return "likely_integrable";
    case IntegrabilityVerdict::not_integrable_evidence: return "not_integrable_evidence";
    case IntegrabilityVerdict::undetermined: return "undetermined";
  }
  return "undetermined";
}

DecisionReport decide_k_integrability(const PointOracle& f, const Brick& t, const std::vector<unsigned>& depths,
                                      const std::optional<Rational>& c, const LimitConfig& cfg,
                                      const std::optional<Rational>& floor, Exec exec) {
  if (depths.empty()) throw Error("decide_k_integrability: empty depth schedule");
  DecisionReport rep;
  rep.floor = floor ? *floor : volume(t) / 16;
  for (unsigned d : depths) {
    DecisionRow row;
    row.depth = d;
    row.dis2_volume = dis2_cover(f, t, d, cfg, exec).total_volume;
    if (c) {
      GridIndex g(t, 1u << d);
      std::vector<std::uint8_t> big(g.size(), 0);
      const double cd = c->get_d();
      for_each_index(
          g.size(),
          [&](std::size_t i) {
            double v;
            try {
              v = f(g.center(i));
            } catch (const EvaluationError&) {
              v = INFINITY;
            }
            big[i] = !(std::abs(v) <= cd);
          },
          exec);
      std::size_t n = std::count(big.begin(), big.end(), 1);
      row.unbounded_volume = g.cell_volume() * static_cast<unsigned long>(n);
    }
    rep.rows.push_back(row);
  }
  auto all_above = [&](auto field) {
    return std::all_of(rep.rows.begin(), rep.rows.end(), [&](const DecisionRow& r) { return r.*field >= rep.floor; });
  };
  bool shrinking = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].dis2_volume > rep.rows[i - 1].dis2_volume) shrinking = false;
  const auto& last = rep.rows.back();
  if (all_above(&DecisionRow::dis2_volume) || (c && all_above(&DecisionRow::unbounded_volume)))
    rep.verdict = IntegrabilityVerdict::not_integrable_evidence;
  else if (shrinking && last.dis2_volume < rep.floor && last.unbounded_volume < rep.floor)
    rep.verdict = IntegrabilityVerdict::likely_integrable;
  else
    rep.verdict = IntegrabilityVerdict::undetermined;
  return rep;
}

}  // namespace brickint
