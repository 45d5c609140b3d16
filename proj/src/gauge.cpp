#include "brickint/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "brickint/sampling.hpp"

namespace brickint {

namespace {

bool fits(const Brick& cell, const Point& tag, const Rational& r) {
  for (std::size_t k = 0; k < cell.dim(); ++k) {
    if (!(tag[k] - cell[k].lo < r)) return false;
    if (!(cell[k].hi - tag[k] < r)) return false;
  }
  return true;
}

Rational checked_radius(const Gauge& gauge, const Point& x) {
  double r = gauge(x);
  if (!(r > 0) || !std::isfinite(r)) throw Error("gauge is not positive and finite at " + to_string(x));
  return from_double(r);
}

void bisect(const Gauge& gauge, const Brick& cell, unsigned depth, unsigned limit, DottedPartition& out) {
  Point c = cell.center();
  if (fits(cell, c, checked_radius(gauge, c))) {
    out.push_back({cell, std::move(c)});
    return;
  }
  if (depth >= limit)
    throw Error("cousin_partition: depth limit " + std::to_string(limit) + " exceeded near " + to_string(c));
  const std::size_t n = cell.dim();
  for (std::size_t code = 0; code < (std::size_t{1} << n); ++code) {
    Brick child = cell;
    for (std::size_t k = 0; k < n; ++k) {
      bool upper = (code >> (n - 1 - k)) & 1;
      if (upper)
        child[k].lo = c[k];
      else
        child[k].hi = c[k];
    }
    bisect(gauge, child, depth + 1, limit, out);
  }
}

}  // namespace

LimitConfig sufficiency_limits() {
  LimitConfig c;
  c.radii = {pow2_inverse(10), pow2_inverse(11), pow2_inverse(12)};
  c.samples = 16;
  c.lattice = 4;
  return c;
}

DottedPartition cousin_partition(const Gauge& gauge, const Brick& t, unsigned depth_limit) {
  if (depth_limit < 1) throw Error("cousin_partition: depth_limit must be >= 1");
  validate(t);
  if (volume(t) == 0) throw Error("cousin_partition: degenerate brick");
  DottedPartition out;
  bisect(gauge, t.closure(), 0, depth_limit, out);
  return out;
}

FineVerdict verify_fine(const DottedPartition& p, const Gauge& gauge, const Brick& t) {
  const Brick tc = t.closure();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i].cell.closed() || !subset(p[i].cell, tc))
      return {false, 1, i, "cell " + format_brick(p[i].cell) + " is not a closed brick inside T"};
  }
  // sweep along axis 0 for interior overlaps
  std::vector<std::size_t> order(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a].cell[0].lo < p[b].cell[0].lo; });
  std::vector<std::size_t> active;
  for (std::size_t idx : order) {
    const Brick& c = p[idx].cell;
    active.erase(std::remove_if(active.begin(), active.end(), [&](std::size_t j) { return p[j].cell[0].hi <= c[0].lo; }),
                 active.end());
    for (std::size_t j : active)
      if (interiors_overlap(p[j].cell, c))
        return {false, 2, std::max(idx, j),
                "cells " + std::to_string(std::min(idx, j)) + " and " + std::to_string(std::max(idx, j)) + " overlap"};
    active.push_back(idx);
  }
  Rational total = 0;
  for (const auto& tc_ : p) total += volume(tc_.cell);
  if (total != volume(t))
    return {false, 3, 0, "cell volumes sum to " + to_string(total) + ", not " + to_string(volume(t))};
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i].cell.contains(p[i].tag))
      return {false, 4, i, "tag " + to_string(p[i].tag) + " outside its cell"};
    if (!fits(p[i].cell, p[i].tag, checked_radius(gauge, p[i].tag)))
      return {false, 4, i, "cell " + format_brick(p[i].cell) + " not inside the ball around its tag"};
  }
  return {};
}

Rational cover_ball_radius(const std::vector<Brick>& open_cover, const Point& x) {
  for (const auto& b : open_cover) {
    Brick o = b.interior();
    if (!o.contains(x)) continue;
    Rational r = x[0] - o[0].lo;
    for (std::size_t k = 0; k < o.dim(); ++k) {
      r = std::min<Rational>(r, x[k] - o[k].lo);
      r = std::min<Rational>(r, o[k].hi - x[k]);
    }
    return r;
  }
  return 0;
}

namespace {

struct TagData {
  double fx = 0;
  std::vector<std::pair<Direction, double>> limits;
};

// Samples of T_{x,alpha} within the open ball B(x, r): stratified points,
// a coarse lattice, and the far corners of the shell.
std::vector<Point> check_points(const Brick& t, const Point& x, const Direction& alpha, const Rational& r,
                                unsigned samples, Rng& rng) {
  Brick ball;
  for (std::size_t k = 0; k < t.dim(); ++k) ball.factors.push_back(Interval::open(x[k] - r, x[k] + r));
  auto region = intersect(subbrick(t, x, alpha), ball);
  if (!region) return {};
  std::vector<Point> pts = latin_hypercube(*region, samples, rng);
  std::vector<std::size_t> axes;
  for (std::size_t k = 0; k < alpha.size(); ++k)
    if (alpha[k] != 0) axes.push_back(k);
  const Rational near_one = 1 - pow2_inverse(24);
  for (unsigned v = 1; v <= 4; ++v) {
    Point p = x;
    for (std::size_t k : axes) {
      const auto& f = (*region)[k];
      const Rational reach = alpha[k] > 0 ? f.hi - x[k] : x[k] - f.lo;
      Rational step = v == 4 ? Rational(reach * near_one) : Rational(reach * v / 4);
      p[k] = x[k] + Rational(alpha[k]) * step;
      p[k].canonicalize();
    }
    if (region->contains(p)) pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace

SufficiencyResult sufficiency_step(const PointOracle& f, const Brick& t, const std::vector<Brick>& cover,
                                   const Rational& c, unsigned m, const SufficiencyConfig& cfg) {
  if (m == 0) throw Error("sufficiency_step: m must be positive");
  const auto directions = all_directions(t.dim());
  const Rational diam = diameter(t);
  const double eps = 1.0 / m;
  std::map<Point, TagData> data;

  Gauge p = [&](const Point& x) -> double {
    Rational inside = cover_ball_radius(cover, x);
    if (inside > 0) return inside.get_d();
    TagData td;
    td.fx = f(x);
    double best = INFINITY;
    std::size_t idx = 0;
    for (const auto& alpha : directions) {
      LimitConfig lc = cfg.limits;
      lc.seed = splitmix64(cfg.limits.seed + idx++);
      LimitEstimate est = directional_limit(f, t, x, alpha, lc);
      if (!est.error.empty() || !est.exists)
        throw EvaluationError("no directional limit at off-cover tag " + to_string(x) + " in direction " +
                              format_direction(alpha) + "; the cover misses a second-kind point");
      td.limits.emplace_back(alpha, est.value);
      Rng rng = stream(lc.seed, 77);
      double found = 0;
      Rational r = diam;
      for (unsigned s = 0; s <= cfg.radius_steps; ++s, r /= 2) {
        bool ok = true;
        for (const auto& y : check_points(t, x, alpha, r, cfg.check_samples, rng))
          if (!(std::abs(f(y) - est.value) < eps)) {
            ok = false;
            break;
          }
        if (ok) {
          found = r.get_d();
          break;
        }
      }
      if (found == 0)
        throw EvaluationError("no radius keeps f within 1/m of its limit at " + to_string(x) + " in direction " +
                              format_direction(alpha));
      best = std::min(best, found);
    }
    if (std::abs(td.fx) > c.get_d() + eps) {
      // |f| > C off the cover: the cover is not adequate
      throw EvaluationError("|f| exceeds C at off-cover tag " + to_string(x));
    }
    data[x] = std::move(td);
    return best;
  };

  SufficiencyResult res{StepFunction(t), cousin_partition(p, t, cfg.depth_limit), 0};
  const auto& part = res.partition;
  const Rational precision = precision_from_env();

  // double boxes for a cheap overlap prefilter
  std::vector<std::vector<std::pair<double, double>>> boxes;
  for (const auto& tc : part) {
    std::vector<std::pair<double, double>> b;
    for (const auto& fct : tc.cell.factors) b.emplace_back(fct.lo.get_d(), fct.hi.get_d());
    boxes.push_back(std::move(b));
  }
  auto may_meet = [&](std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < boxes[a].size(); ++k)
      if (boxes[a][k].second < boxes[b][k].first - 1e-12 || boxes[b][k].second < boxes[a][k].first - 1e-12) return false;
    return true;
  };

  for (std::size_t i = 0; i < part.size(); ++i) {
    const auto& [cell, tag] = part[i];
    if (cover_ball_radius(cover, tag) > 0) {
      ++res.tags_in_cover;
      continue;
    }
    // points whose first containing cell is i
    std::vector<Brick> pieces{cell};
    for (std::size_t j = 0; j < i && !pieces.empty(); ++j) {
      if (!may_meet(i, j)) continue;
      std::vector<Brick> next;
      for (const auto& q : pieces)
        for (auto& d : difference(q, part[j].cell)) next.push_back(std::move(d));
      pieces = std::move(next);
    }
    const TagData& td = data.at(tag);
    for (const auto& q : pieces) {
      if (q.contains(tag)) {
        Rational v = round_to_grid(td.fx, precision);
        if (v != 0) {
          Brick pt;
          for (const auto& xk : tag) pt.factors.push_back(Interval::point(xk));
          res.g.terms.push_back({v, std::move(pt)});
        }
      }
      for (const auto& [alpha, lim] : td.limits) {
        auto part_q = intersect(q, subbrick(t, tag, alpha));
        if (!part_q) continue;
        Rational v = round_to_grid(lim, precision);
        if (v != 0) res.g.terms.push_back({v, std::move(*part_q)});
      }
    }
  }
  return res;
}

AuditResult zero_derivative_audit(const AdditiveSetFunction& phi, const std::vector<Brick>& null_cover, const Brick& s,
                                  const Rational& c, const Gauge& deriv_radius, unsigned depth_limit) {
  AuditResult res;
  if (c <= 0) {
    res.reason = "c must be positive";
    return res;
  }
  Rational cover_vol = 0;
  for (const auto& b : null_cover) cover_vol += volume(b);
  if (phi.lipschitz > 0 && !(cover_vol < c / (2 * phi.lipschitz))) {
    res.reason = "null cover volume " + to_string(cover_vol) + " is not below c/(2L)";
    return res;
  }
  Gauge p = [&](const Point& x) -> double {
    Rational inside = cover_ball_radius(null_cover, x);
    if (inside > 0) return inside.get_d();
    return deriv_radius(x);
  };
  DottedPartition part;
  try {
    part = cousin_partition(p, s, depth_limit);
  } catch (const Error& e) {
    res.reason = std::string("partition failure: ") + e.what();
    return res;
  }
  long double in_h = 0, off_h = 0;
  for (const auto& tc : part) {
    double v = std::abs(phi.value(tc.cell));
    if (cover_ball_radius(null_cover, tc.tag) > 0) {
      in_h += v;
      ++res.cells_in_h;
    } else {
      off_h += v;
      ++res.cells_off_h;
    }
  }
  res.sum_in_h = static_cast<double>(in_h);
  res.sum_off_h = static_cast<double>(off_h);
  const double half = Rational(c / 2).get_d();
  res.certified = res.sum_in_h < half && res.sum_off_h < half;
  if (!res.certified)
    res.reason = "partition sums " + std::to_string(res.sum_in_h) + " (in H) and " + std::to_string(res.sum_off_h) +
                 " (off H) do not both stay below c/2";
  return res;
}

}  // namespace brickint
