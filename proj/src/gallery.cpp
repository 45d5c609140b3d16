#include "brickint/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace brickint::gallery {

Rational RemovedIntervals::total_length() const {
  Rational s = 0;
  for (const auto& st : stages)
    for (const auto& iv : st) s += iv.b - iv.a;
  return s;
}

std::vector<RemovedInterval> RemovedIntervals::by_position() const {
  std::vector<RemovedInterval> all;
  for (const auto& st : stages) all.insert(all.end(), st.begin(), st.end());
  std::sort(all.begin(), all.end(), [](const RemovedInterval& x, const RemovedInterval& y) { return x.a < y.a; });
  return all;
}

namespace {

struct Stages {
  RemovedIntervals removed;
  std::vector<std::pair<Rational, Rational>> remaining;
};

Stages build(unsigned k) {
  if (k < 1 || k > 24) throw Error("fat Cantor stages must be in 1..24");
  Stages s;
  s.remaining = {{Rational(0), Rational(1)}};
  std::size_t n = 1;
  for (unsigned stage = 1; stage <= k; ++stage) {
    const Rational len = pow2_inverse(2 * stage);
    std::vector<RemovedInterval> cut;
    std::vector<std::pair<Rational, Rational>> next;
    for (const auto& [l, r] : s.remaining) {
      Rational c = (l + r) / 2;
      Rational a = c - len / 2, b = c + len / 2;
      a.canonicalize();
      b.canonicalize();
      cut.push_back({a, b, stage, n++});
      next.emplace_back(l, a);
      next.emplace_back(b, r);
    }
    s.removed.stages.push_back(std::move(cut));
    s.remaining = std::move(next);
  }
  return s;
}

}  // namespace

RemovedIntervals fat_cantor(unsigned k) { return build(k).removed; }

std::vector<Brick> fat_cantor_remaining(unsigned k) {
  std::vector<Brick> out;
  for (const auto& [l, r] : build(k).remaining) out.push_back(Brick({Interval::closed(l, r)}));
  return out;
}

CantorSine::CantorSine(unsigned k) : k_(k), sorted_(fat_cantor(k).by_position()) {}

double CantorSine::operator()(const Rational& x) const {
  if (x < 0 || x > 1) throw EvaluationError("f_prop41c is defined on [0,1]");
  auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x,
                             [](const Rational& v, const RemovedInterval& iv) { return v < iv.a; });
  if (it == sorted_.begin()) return 0;
  --it;
  if (!(it->a < x && x < it->b)) return 0;
  const double left = Rational(x - it->a).get_d();
  const double right = Rational(it->b - x).get_d();
  return (std::sin(1.0 / left) + std::sin(1.0 / right)) / static_cast<double>(it->n);
}

double f_prop41c(const Rational& x, unsigned k) {
  static const CantorSine cached(8);
  if (k == 8) return cached(x);
  return CantorSine(k)(x);
}

double h_fixture(const CantorSine& f, const Rational& x, const Rational& y) {
  if (y < 0) return 0;
  return y.get_d() <= f(x) + 2.0 ? 1.0 : 0.0;
}

Rational thomae(const std::optional<Rational>& x) {
  if (!x) return 0;
  Rational r = *x;
  r.canonicalize();
  return Rational(mpz_class(1), r.get_den());
}

double thomae_decimal(double x, std::int64_t bound) {
  if (!std::isfinite(x)) return 0;
  Rational q = best_approximation(x, bound);
  if (std::abs(q.get_d() - x) > 1e-12) return 0;
  return 1.0 / q.get_den().get_d();
}

Rotation pythagorean_rotation(long a, long b) {
  if (a <= 0 || b <= 0) throw Error("rotation angle must lie strictly between 0 and pi/2");
  long c2 = a * a + b * b;
  long c = std::lround(std::sqrt(static_cast<double>(c2)));
  if (c * c != c2) throw Error("(" + std::to_string(a) + ", " + std::to_string(b) + ") is not a Pythagorean pair");
  Rotation g{Rational(a, c), Rational(b, c)};
  g.cos.canonicalize();
  g.sin.canonicalize();
  return g;
}

Point inverse_rotate(const Point& p, const Rotation& g) {
  if (p.size() != 2) throw Error("rotation acts on points of the plane");
  Point u{p[0] * g.cos + p[1] * g.sin, -p[0] * g.sin + p[1] * g.cos};
  u[0].canonicalize();
  u[1].canonicalize();
  return u;
}

double rotated_thomae(const Point& p, const Rotation& g) {
  Point u = inverse_rotate(p, g);
  if (u[0] < 0 || u[0] > 1 || u[1] < 0 || u[1] > 1) return 0;
  return thomae(u[0]).get_d();
}

double rotated_thomae_decimal(double x, double y, const Rotation& g, std::int64_t bound) {
  const double c = g.cos.get_d(), s = g.sin.get_d();
  const double u = x * c + y * s, v = -x * s + y * c;
  if (u < 0 || u > 1 || v < 0 || v > 1) return 0;
  return thomae_decimal(u, bound);
}

Brick rotated_domain() { return closed_brick({{-1, 1}, {0, 2}}); }

StepFunction shrinking_indicator(std::size_t m) {
  if (m == 0) throw Error("shrinking_indicator: m must be >= 1");
  return indicator(unit_cube(1), closed_brick({{0, Rational(1, static_cast<unsigned long>(m))}}));
}

Point rational_point(std::size_t m, std::size_t n) {
  if (m == 0) throw Error("rational enumeration starts at 1");
  if (n == 0) throw Error("dimension must be >= 1");
  std::size_t seen = 0;
  for (unsigned long q = 1;; ++q) {
    std::vector<unsigned long> p(n, 0);
    for (;;) {
      unsigned long g = q;
      for (auto v : p) g = std::gcd(g, v);
      if (g == 1 && ++seen == m) {
        Point x;
        for (auto v : p) x.push_back(Rational(v, q));
        for (auto& c : x) c.canonicalize();
        return x;
      }
      std::size_t k = n;
      while (k > 0) {
        --k;
        if (++p[k] <= q) break;
        p[k] = 0;
        if (k == 0) goto next_q;
      }
    }
  next_q:;
  }
}

StepFunction rational_indicator(std::size_t m, std::size_t n) {
  Point q = rational_point(m, n);
  Brick b;
  for (const auto& c : q) b.factors.push_back(Interval::point(c));
  return indicator(unit_cube(n), b);
}

namespace {

using Params = std::map<std::string, std::string>;

Params parse_params(std::string_view text) {
  Params p;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto amp = text.find('&', pos);
    std::string_view item = text.substr(pos, amp == std::string_view::npos ? std::string_view::npos : amp - pos);
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) throw Error("gallery parameter '" + std::string(item) + "' needs key=value");
    p[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    if (amp == std::string_view::npos) break;
    pos = amp + 1;
  }
  return p;
}

long param_int(Params& p, const std::string& key, long fallback) {
  auto it = p.find(key);
  if (it == p.end()) {
    p[key] = std::to_string(fallback);
    return fallback;
  }
  Rational v = parse_rational(it->second);
  if (v.get_den() != 1) throw Error("gallery parameter " + key + " must be an integer");
  return v.get_num().get_si();
}

Rational half() { return Rational(1, 2); }

using Factory = std::function<Fixture(Params&)>;

const std::map<std::string, Factory>& registry() {
  static const std::map<std::string, Factory> r = {
      {"thomae",
       [](Params&) {
         Fixture f{"thomae", unit_cube(1), nullptr, nullptr, Rational(1), {}, "Thomae's function H on [0,1]"};
         f.eval = [](const Point& x) { return thomae(x[0]).get_d(); };
         return f;
       }},
      {"thomae_decimal",
       [](Params& p) {
         long bound = param_int(p, "bound", 10000);
         Fixture f{"thomae_decimal", unit_cube(1), nullptr, nullptr, Rational(1), {},
                   "Thomae's function on decimals with a denominator bound"};
         f.eval = [bound](const Point& x) { return thomae_decimal(x[0].get_d(), bound); };
         return f;
       }},
      {"thomae-sheet",
       [](Params&) {
         Fixture f{"thomae-sheet", unit_cube(2), nullptr, nullptr, Rational(1), {}, "(x, y) -> H(x) on [0,1]^2"};
         f.eval = [](const Point& x) { return thomae(x[0]).get_d(); };
         return f;
       }},
      {"rotated_thomae",
       [](Params& p) {
         long a = param_int(p, "a", 3), b = param_int(p, "b", 4);
         Rotation g = pythagorean_rotation(a, b);
         Fixture f{"rotated_thomae", rotated_domain(), nullptr, nullptr, Rational(1), {},
                   "thomae-sheet rotated by the angle with cos = a/c, sin = b/c, zero outside the image"};
         f.eval = [g](const Point& x) { return rotated_thomae(x, g); };
         return f;
       }},
      {"f_prop41c",
       [](Params& p) {
         long k = param_int(p, "k", 8);
         auto fn = std::make_shared<CantorSine>(static_cast<unsigned>(k));
         Fixture f{"f_prop41c", unit_cube(1), nullptr, nullptr, Rational(2), {},
                   "oscillating bumps on the removed intervals of a fat Cantor set"};
         f.eval = [fn](const Point& x) { return (*fn)(x[0]); };
         return f;
       }},
      {"h_fixture",
       [](Params& p) {
         long k = param_int(p, "k", 8);
         auto fn = std::make_shared<CantorSine>(static_cast<unsigned>(k));
         Fixture f{"h_fixture", closed_brick({{0, 1}, {0, 4}}), nullptr, nullptr, Rational(1), {},
                   "indicator of 0 <= y <= f_prop41c(x) + 2 on [0,1] x [0,4]"};
         f.eval = [fn](const Point& x) { return h_fixture(*fn, x[0], x[1]); };
         return f;
       }},
      {"shrinking_indicator",
       [](Params& p) {
         long m = param_int(p, "m", 4);
         if (m < 1) throw Error("shrinking_indicator: m must be >= 1");
         Rational end(1, static_cast<unsigned long>(m));
         Fixture f{"shrinking_indicator", unit_cube(1), nullptr, nullptr, Rational(1), {}, "indicator of [0, 1/m]"};
         f.eval = [end](const Point& x) { return x[0] <= end ? 1.0 : 0.0; };
         f.support = [end](const Point& x) { return x[0] <= end; };
         return f;
       }},
      {"rational_indicator",
       [](Params& p) {
         long m = param_int(p, "m", 1);
         long n = param_int(p, "n", 1);
         if (m < 1 || n < 1) throw Error("rational_indicator: m and n must be >= 1");
         Point q = rational_point(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
         Fixture f{"rational_indicator", unit_cube(static_cast<std::size_t>(n)), nullptr, nullptr, Rational(1), {},
                   "indicator of the m-th rational point"};
         f.eval = [q](const Point& x) { return x == q ? 1.0 : 0.0; };
         return f;
       }},
      {"step_edge",
       [](Params&) {
         Fixture f{"step_edge", unit_cube(1), nullptr, nullptr, Rational(1), {}, "indicator of (1/2, 1]"};
         f.eval = [](const Point& x) { return x[0] > half() ? 1.0 : 0.0; };
         f.support = [](const Point& x) { return x[0] > half(); };
         return f;
       }},
      {"first_kind_2d",
       [](Params&) {
         Fixture f{"first_kind_2d", unit_cube(2), nullptr, nullptr, Rational(3), {},
                   "indicator(x > 1/2) + 2 indicator(y > 1/2)"};
         f.eval = [](const Point& x) { return (x[0] > half() ? 1.0 : 0.0) + (x[1] > half() ? 2.0 : 0.0); };
         return f;
       }},
      {"sin_recip",
       [](Params&) {
         Fixture f{"sin_recip", unit_cube(1), nullptr, nullptr, Rational(1), {}, "sin(1/(x - 1/2)), 0 at 1/2"};
         f.eval = [](const Point& x) {
           if (x[0] == half()) return 0.0;
           return std::sin(1.0 / Rational(x[0] - half()).get_d());
         };
         return f;
       }},
      {"triangle",
       [](Params&) {
         Fixture f{"triangle", unit_cube(2), nullptr, nullptr, Rational(1), {}, "indicator of x + y <= 1"};
         f.eval = [](const Point& x) { return x[0] + x[1] <= 1 ? 1.0 : 0.0; };
         f.support = [](const Point& x) { return x[0] + x[1] <= 1; };
         return f;
       }},
  };
  return r;
}

}  // namespace

Fixture make_fixture(std::string_view ref) {
  if (ref.substr(0, 8) == "gallery:") ref.remove_prefix(8);
  auto q = ref.find('?');
  std::string name(ref.substr(0, q));
  if (name == "thomae_sheet") name = "thomae-sheet";
  Params p = q == std::string_view::npos ? Params{} : parse_params(ref.substr(q + 1));
  auto it = registry().find(name);
  if (it == registry().end()) throw Error("unknown gallery fixture '" + name + "'");
  // a dry run with no parameters fills in every key the factory reads
  Params known;
  it->second(known);
  for (const auto& [key, value] : p)
    if (!known.count(key)) throw Error("fixture '" + name + "' has no parameter '" + key + "'");
  Params used = p;
  Fixture f = it->second(used);
  f.params = used;
  return f;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [name, factory] : registry()) out.push_back(name);
  return out;
}

}  // namespace brickint::gallery
