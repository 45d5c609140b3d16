#include "brickint/geometry.hpp"

#include <algorithm>
#include <map>

namespace brickint {

Interval Interval::closed(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, true}; }
Interval Interval::open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), false, false}; }
Interval Interval::point(Rational x) { return {x, x, true, true}; }

bool Interval::empty() const {
  if (lo > hi) return true;
  if (lo == hi) return !(lo_closed && hi_closed);
  return false;
}

bool Interval::contains(const Rational& x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

Brick::Brick(std::vector<Interval> f) : factors(std::move(f)) {}

bool Brick::contains(const Point& x) const {
  if (x.size() != dim()) throw Error("point dimension " + std::to_string(x.size()) + " != brick dimension " + std::to_string(dim()));
  for (std::size_t k = 0; k < dim(); ++k)
    if (!factors[k].contains(x[k])) return false;
  return true;
}

Point Brick::center() const {
  Point c;
  c.reserve(dim());
  for (const auto& f : factors) c.push_back(f.midpoint());
  return c;
}

Brick Brick::closure() const {
  Brick b = *this;
  for (auto& f : b.factors) f.lo_closed = f.hi_closed = true;
  return b;
}

Brick Brick::interior() const {
  Brick b = *this;
  for (auto& f : b.factors) f.lo_closed = f.hi_closed = false;
  return b;
}

bool Brick::closed() const {
  return std::all_of(factors.begin(), factors.end(), [](const Interval& f) { return f.lo_closed && f.hi_closed; });
}

Brick closed_brick(const std::vector<std::pair<Rational, Rational>>& sides) {
  std::vector<Interval> f;
  for (const auto& [lo, hi] : sides) f.push_back(Interval::closed(lo, hi));
  Brick b(std::move(f));
  validate(b);
  return b;
}

Brick unit_cube(std::size_t n) {
  return Brick(std::vector<Interval>(n, Interval::closed(0, 1)));
}

void validate(const Brick& b) {
  if (b.dim() == 0) throw Error("brick has no factors");
  for (std::size_t k = 0; k < b.dim(); ++k)
    if (b[k].empty())
      throw Error("empty factor on axis " + std::to_string(k) + " of " + format_brick(b));
}

Rational volume(const Brick& b) {
  Rational v = 1;
  for (const auto& f : b.factors) v *= f.length();
  return v;
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  if (r.empty()) return std::nullopt;
  return r;
}

std::optional<Brick> intersect(const Brick& a, const Brick& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch in intersect");
  Brick r;
  r.factors.reserve(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) {
    auto f = intersect(a[k], b[k]);
    if (!f) return std::nullopt;
    r.factors.push_back(std::move(*f));
  }
  return r;
}

bool subset(const Interval& a, const Interval& b) {
  if (a.empty()) return true;
  if (a.lo < b.lo || a.hi > b.hi) return false;
  if (a.lo == b.lo && a.lo_closed && !b.lo_closed) return false;
  if (a.hi == b.hi && a.hi_closed && !b.hi_closed) return false;
  return true;
}

bool subset(const Brick& a, const Brick& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch in subset");
  for (std::size_t k = 0; k < a.dim(); ++k)
    if (!subset(a[k], b[k])) return false;
  return true;
}

bool interiors_overlap(const Brick& a, const Brick& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch");
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (!(a[k].lo < b[k].hi && b[k].lo < a[k].hi)) return false;
  }
  return true;
}

Rational diameter(const Brick& b) {
  Rational d = 0;
  for (const auto& f : b.factors) d = std::max(d, f.length());
  return d;
}

std::vector<Brick> difference(const Brick& a, const Brick& b) {
  auto cut = intersect(a, b);
  if (!cut) return {a};
  // Peel a one axis at a time: the part below the cut, the part above, then
  // continue with the slab that matches the cut on this axis.
  std::vector<Brick> out;
  Brick rest = a;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const Interval& c = (*cut)[k];
    Interval below{rest[k].lo, c.lo, rest[k].lo_closed, !c.lo_closed};
    Interval above{c.hi, rest[k].hi, !c.hi_closed, rest[k].hi_closed};
    if (!below.empty()) {
      Brick piece = rest;
      piece[k] = below;
      out.push_back(std::move(piece));
    }
    if (!above.empty()) {
      Brick piece = rest;
      piece[k] = above;
      out.push_back(std::move(piece));
    }
    rest[k] = c;
  }
  return out;
}

namespace {

// Atoms of one axis: cut points and the open gaps between them, restricted to
// the ambient factor, ordered left to right.
std::vector<Interval> axis_atoms(std::vector<Rational> cuts, const Interval& amb) {
  cuts.push_back(amb.lo);
  cuts.push_back(amb.hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Interval> atoms;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i] < amb.lo || cuts[i] > amb.hi) continue;
    if (amb.contains(cuts[i])) atoms.push_back(Interval::point(cuts[i]));
    if (i + 1 < cuts.size() && cuts[i] >= amb.lo && cuts[i + 1] <= amb.hi && cuts[i] < cuts[i + 1])
      atoms.push_back(Interval::open(cuts[i], cuts[i + 1]));
  }
  return atoms;
}

std::vector<Interval> axis_cells(const std::vector<Brick>& bricks, const Interval& amb, std::size_t k) {
  std::vector<Rational> cuts;
  for (const auto& b : bricks) {
    cuts.push_back(b[k].lo);
    cuts.push_back(b[k].hi);
  }
  auto atoms = axis_atoms(std::move(cuts), amb);
  std::vector<Interval> cells;
  std::vector<bool> prev_sig;
  for (const auto& atom : atoms) {
    const Rational probe = atom.midpoint();
    std::vector<bool> sig(bricks.size());
    for (std::size_t j = 0; j < bricks.size(); ++j) sig[j] = bricks[j][k].contains(probe);
    if (!cells.empty() && sig == prev_sig) {
      cells.back().hi = atom.hi;
      cells.back().hi_closed = atom.hi_closed;
    } else {
      cells.push_back(atom);
      prev_sig = std::move(sig);
    }
  }
  return cells;
}

}  // namespace

std::vector<Brick> common_refinement(const std::vector<Brick>& bricks, const Brick& ambient) {
  validate(ambient);
  for (const auto& b : bricks) {
    if (b.dim() != ambient.dim()) throw Error("dimension mismatch in common_refinement");
    if (!subset(b, ambient)) throw Error("brick " + format_brick(b) + " lies outside ambient " + format_brick(ambient));
  }
  const std::size_t n = ambient.dim();
  std::vector<std::vector<Interval>> per_axis(n);
  for (std::size_t k = 0; k < n; ++k) per_axis[k] = axis_cells(bricks, ambient[k], k);

  std::vector<Brick> out;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    Brick c;
    c.factors.reserve(n);
    for (std::size_t k = 0; k < n; ++k) c.factors.push_back(per_axis[k][idx[k]]);
    out.push_back(std::move(c));
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] < per_axis[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

GridIndex::GridIndex(Brick t, unsigned m_) : ambient(std::move(t)), m(m_) {
  if (m == 0) throw Error("grid resolution m must be positive");
  validate(ambient);
  if (volume(ambient) == 0) throw Error("cannot tile a degenerate brick");
  for (std::size_t k = 0; k < ambient.dim(); ++k) count_ *= m;
}

std::vector<unsigned> GridIndex::multi_index(std::size_t i) const {
  std::vector<unsigned> j(ambient.dim());
  for (std::size_t k = ambient.dim(); k-- > 0;) {
    j[k] = static_cast<unsigned>(i % m);
    i /= m;
  }
  return j;
}

Brick GridIndex::cell(std::size_t i) const {
  auto j = multi_index(i);
  Brick c;
  c.factors.reserve(ambient.dim());
  for (std::size_t k = 0; k < ambient.dim(); ++k) {
    const auto& a = ambient[k];
    Rational w = a.length() / m;
    Interval f{a.lo + w * j[k], a.lo + w * (j[k] + 1), true, j[k] + 1 == m};
    if (j[k] + 1 == m) {
      f.hi = a.hi;
      f.hi_closed = a.hi_closed;
    }
    if (j[k] == 0) f.lo_closed = a.lo_closed;
    c.factors.push_back(std::move(f));
  }
  return c;
}

Point GridIndex::center(std::size_t i) const {
  auto j = multi_index(i);
  Point x;
  x.reserve(ambient.dim());
  for (std::size_t k = 0; k < ambient.dim(); ++k) {
    const auto& a = ambient[k];
    Rational c = a.lo + a.length() * (2 * j[k] + 1) / (2 * m);
    c.canonicalize();
    x.push_back(std::move(c));
  }
  return x;
}

Rational GridIndex::cell_volume() const {
  Rational v = volume(ambient);
  for (std::size_t k = 0; k < ambient.dim(); ++k) v /= m;
  return v;
}

std::size_t GridIndex::locate(const Point& x) const {
  if (!ambient.contains(x)) throw Error("point " + to_string(x) + " outside grid ambient");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < ambient.dim(); ++k) {
    const auto& a = ambient[k];
    Rational s = (x[k] - a.lo) * m / a.length();
    mpz_class j;
    mpz_fdiv_q(j.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    unsigned jj = static_cast<unsigned>(std::min<unsigned long>(j.get_ui(), m - 1));
    idx = idx * m + jj;
  }
  return idx;
}

UniformTiling uniform_tiling(const Brick& t, unsigned m) {
  GridIndex g(t, m);
  UniformTiling out{t, m, {}, {}};
  out.cells.reserve(g.size());
  out.centers.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.cells.push_back(g.cell(i));
    out.centers.push_back(g.center(i));
  }
  return out;
}

Brick max_norm_ball(const Point& x, const Rational& r, const Brick& t) {
  if (r <= 0) throw Error("ball radius must be positive");
  if (x.size() != t.dim()) throw Error("dimension mismatch in max_norm_ball");
  Brick ball;
  for (std::size_t k = 0; k < t.dim(); ++k) ball.factors.push_back(Interval::open(x[k] - r, x[k] + r));
  auto clipped = intersect(ball, t);
  if (!clipped) throw Error("ball does not meet the ambient brick");
  return *clipped;
}

Brick parse_ambient(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error("empty ambient");
  Brick b;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != '[') throw Error("ambient: expected '[' at offset " + std::to_string(pos) + " in '" + s + "'");
    auto close = s.find(']', pos);
    if (close == std::string::npos) throw Error("ambient: missing ']' in '" + s + "'");
    std::string body = s.substr(pos + 1, close - pos - 1);
    auto comma = body.find(',');
    if (comma == std::string::npos) throw Error("ambient: expected 'lo,hi' in '" + body + "'");
    Interval f = Interval::closed(parse_rational(body.substr(0, comma)), parse_rational(body.substr(comma + 1)));
    pos = close + 1;
    std::size_t repeat = 1;
    if (pos < s.size() && s[pos] == '^') {
      auto end = s.find_first_of("xX", pos);
      std::string count = s.substr(pos + 1, end == std::string::npos ? std::string::npos : end - pos - 1);
      if (count.empty() || count.find_first_not_of("0123456789") != std::string::npos)
        throw Error("ambient: bad exponent '" + count + "'");
      repeat = std::stoul(count);
      pos = end == std::string::npos ? s.size() : end;
    }
    for (std::size_t r = 0; r < repeat; ++r) b.factors.push_back(f);
    if (pos < s.size()) {
      if (s[pos] != 'x' && s[pos] != 'X') throw Error("ambient: expected 'x' between factors in '" + s + "'");
      ++pos;
    }
  }
  validate(b);
  for (const auto& f : b.factors)
    if (f.degenerate()) throw Error("ambient brick must have positive volume");
  return b;
}

std::string format_brick(const Brick& b) {
  std::string out;
  for (std::size_t k = 0; k < b.dim(); ++k) {
    if (k) out += "x";
    const auto& f = b[k];
    out += f.lo_closed ? "[" : "(";
    out += to_string(f.lo) + "," + to_string(f.hi);
    out += f.hi_closed ? "]" : ")";
  }
  return out;
}

}  // namespace brickint
