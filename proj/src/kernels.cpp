#include "brickint/kernels.hpp"

#include <cmath>
#include <algorithm>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "brickint/sampling.hpp"

namespace brickint {

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Exec exec) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first;
  std::size_t first_index = std::numeric_limits<std::size_t>::max();
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(brickint_first_error)
      if (static_cast<std::size_t>(i) < first_index) {
        first_index = static_cast<std::size_t>(i);
        first = std::current_exception();
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

mpz_class grid_units(double v, const Rational& precision) { return round_units(v, precision); }

Rational MidpointSum::integral(const GridIndex& g, const Rational& precision) const {
  Rational v = Rational(units) * precision * g.cell_volume();
  v.canonicalize();
  return v;
}

namespace {

double checked(double v, const Point& x) {
  if (!std::isfinite(v)) throw EvaluationError("non-finite value at " + to_string(x));
  return v;
}

}  // namespace

MidpointSum midpoint_sum(const PointOracle& f, const GridIndex& g, const Rational& precision, Exec exec) {
  MidpointSum out;
  out.min_value = std::numeric_limits<double>::infinity();
  out.max_value = -std::numeric_limits<double>::infinity();
  const std::int64_t n = static_cast<std::int64_t>(g.size());
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < n; ++i) {
      Point c = g.center(static_cast<std::size_t>(i));
      double v = checked(f(c), c);
      out.units += grid_units(v, precision);
      out.min_value = std::min(out.min_value, v);
      out.max_value = std::max(out.max_value, v);
    }
    return out;
  }
  std::exception_ptr first;
#pragma omp parallel
  {
    mpz_class local;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        Point c = g.center(static_cast<std::size_t>(i));
        double v = checked(f(c), c);
        local += grid_units(v, precision);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      } catch (...) {
#pragma omp critical(brickint_midpoint)
        if (!first) first = std::current_exception();
      }
    }
#pragma omp critical(brickint_midpoint)
    {
      out.units += local;
      out.min_value = std::min(out.min_value, lo);
      out.max_value = std::max(out.max_value, hi);
    }
  }
  if (first) std::rethrow_exception(first);
  return out;
}

std::vector<std::uint8_t> classify_cells(const PointPredicate& member, const GridIndex& g, Exec exec) {
  const std::size_t n = g.ambient.dim();
  const unsigned m = g.m;
  // vertex lattice values, (m+1)^n, shared between neighboring cells
  std::size_t vcount = 1;
  for (std::size_t k = 0; k < n; ++k) vcount *= (m + 1);
  std::vector<std::uint8_t> vertex(vcount), center(g.size());
  for_each_index(
      vcount,
      [&](std::size_t i) {
        Point x(n);
        std::size_t rest = i;
        for (std::size_t k = n; k-- > 0;) {
          unsigned j = static_cast<unsigned>(rest % (m + 1));
          rest /= (m + 1);
          const auto& a = g.ambient[k];
          x[k] = a.lo + a.length() * j / m;
          x[k].canonicalize();
        }
        vertex[i] = member(x) ? 1 : 0;
      },
      exec);
  for_each_index(g.size(), [&](std::size_t i) { center[i] = member(g.center(i)) ? 1 : 0; }, exec);

  std::vector<std::uint8_t> state(g.size());
  for_each_index(
      g.size(),
      [&](std::size_t i) {
        auto j = g.multi_index(i);
        unsigned hits = center[i], total = 1;
        for (std::size_t corner = 0; corner < (std::size_t{1} << n); ++corner) {
          std::size_t v = 0;
          for (std::size_t k = 0; k < n; ++k) v = v * (m + 1) + j[k] + ((corner >> (n - 1 - k)) & 1);
          hits += vertex[v];
          ++total;
        }
        state[i] = hits == 0 ? cell_outside : (hits == total ? cell_inside : cell_mixed);
      },
      exec);
  return state;
}

std::vector<CellRange> cell_extrema(const PointOracle& f, const GridIndex& g, unsigned random_samples,
                                    std::uint64_t seed, Exec exec) {
  const std::size_t n = g.ambient.dim();
  std::vector<CellRange> out(g.size());
  for_each_index(
      g.size(),
      [&](std::size_t i) {
        Brick cell = g.cell(i).closure();
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        auto take = [&](const Point& x) {
          double v = checked(f(x), x);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        };
        for (std::size_t corner = 0; corner < (std::size_t{1} << n); ++corner) {
          Point x(n);
          for (std::size_t k = 0; k < n; ++k) x[k] = ((corner >> k) & 1) ? cell[k].hi : cell[k].lo;
          take(x);
        }
        take(cell.center());
        Point simple(n);
        for (std::size_t k = 0; k < n; ++k) simple[k] = simplest_between(cell[k].lo, cell[k].hi);
        take(simple);
        Rng rng = stream(seed, i);
        for (unsigned s = 0; s < random_samples; ++s) {
          Point x(n);
          for (std::size_t k = 0; k < n; ++k) x[k] = stratified_dyadic(cell[k], s, random_samples, rng);
          take(x);
        }
        out[i] = {lo, hi};
      },
      exec);
  return out;
}

}  // namespace brickint
