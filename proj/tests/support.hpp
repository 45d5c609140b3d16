#pragma once
// Random step functions and equivalent rewritings shared by the unit and
// acceptance tests.

#include <algorithm>
#include <random>

#include "brickint/sampling.hpp"
#include "brickint/stepfn.hpp"

namespace brickint::testkit {

inline Rational random_grid_value(Rng& rng) {
  static const long dens[] = {2, 3, 4, 5, 6, 8, 12};
  long q = dens[rng() % 7];
  long p = static_cast<long>(rng() % (q + 1));
  Rational v(p, q);
  v.canonicalize();
  return v;
}

inline Interval random_interval(Rng& rng) {
  Rational a = random_grid_value(rng), b = random_grid_value(rng);
  if (b < a) std::swap(a, b);
  if (a == b) return Interval::point(a);
  Interval f = Interval::closed(a, b);
  f.lo_closed = rng() % 2;
  f.hi_closed = rng() % 2;
  return f;
}

inline Brick random_brick(Rng& rng, std::size_t n = 2) {
  Brick b;
  for (std::size_t k = 0; k < n; ++k) b.factors.push_back(random_interval(rng));
  return b;
}

inline Rational random_coeff(Rng& rng, bool nonnegative = false) {
  long p = static_cast<long>(rng() % 19) - (nonnegative ? 0 : 9);
  long q = static_cast<long>(rng() % 4) + 1;
  Rational c(p, q);
  c.canonicalize();
  return c;
}

inline StepFunction random_step(Rng& rng, std::size_t terms, bool nonnegative = false, std::size_t n = 2) {
  StepFunction g(unit_cube(n));
  for (std::size_t j = 0; j < terms; ++j) g.add(random_coeff(rng, nonnegative), random_brick(rng, n));
  return g;
}

/// Cuts term j along a random axis at an interior grid point.
inline void split_term(StepFunction& g, std::size_t j, Rng& rng) {
  Term t = g.terms[j];
  for (std::size_t tries = 0; tries < 8; ++tries) {
    std::size_t k = rng() % t.support.dim();
    const Interval& f = t.support[k];
    if (f.degenerate()) continue;
    Rational c = f.lo + f.length() * Rational(static_cast<long>(rng() % 7) + 1, 8);
    c.canonicalize();
    Brick left = t.support, right = t.support;
    const bool cut_closed_left = rng() % 2;
    left[k].hi = c;
    left[k].hi_closed = cut_closed_left;
    right[k].lo = c;
    right[k].lo_closed = !cut_closed_left;
    g.terms[j] = {t.coeff, left};
    g.terms.push_back({t.coeff, right});
    return;
  }
}

/// An equivalent representation of g built from random local rewrites.
inline StepFunction rewrite(const StepFunction& g, Rng& rng) {
  StepFunction h = g;
  const unsigned steps = 3 + rng() % 4;
  for (unsigned s = 0; s < steps; ++s) {
    switch (rng() % 5) {
      case 0:
        if (!h.terms.empty()) split_term(h, rng() % h.terms.size(), rng);
        break;
      case 1: {
        Brick b = random_brick(rng, g.ambient.dim());
        Rational c = random_coeff(rng);
        h.add(c, b);
        h.add(-c, b);
        break;
      }
      case 2:
        if (!h.terms.empty()) {
          std::size_t j = rng() % h.terms.size();
          h.terms[j].coeff /= 2;
          h.terms.push_back(h.terms[j]);
        }
        break;
      case 3:
        std::shuffle(h.terms.begin(), h.terms.end(), rng);
        break;
      default:
        h = canonicalize(h);
        break;
    }
  }
  return h;
}

}  // namespace brickint::testkit
