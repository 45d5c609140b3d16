#pragma once

// Grid sweeps shared by the integrator, Jordan and classification code. Each
// kernel has a serial reference and an OpenMP version; both must return
// identical results (exact sums, per-cell seeded sampling).

#include <cstdint>
#include <exception>
#include <functional>
#include <vector>

#include "brickint/geometry.hpp"

namespace brickint {

enum class Exec { serial, parallel };

/// Runs body(i) for i in [0, n). Exceptions thrown by body are rethrown on
/// the calling thread (the one with the smallest index wins).
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Exec exec);

/// Nearest integer to v / precision, exactly.
mpz_class grid_units(double v, const Rational& precision);

struct MidpointSum {
  mpz_class units;  // sum over cells of round(f(center) / precision)
  double min_value = 0, max_value = 0;
  /// units * precision * cell_volume
  Rational integral(const GridIndex& g, const Rational& precision) const;
};

MidpointSum midpoint_sum(const PointOracle& f, const GridIndex& g, const Rational& precision, Exec exec);

enum CellState : std::uint8_t { cell_outside = 0, cell_mixed = 1, cell_inside = 2 };

/// Classifies every cell of g by its corner and center samples.
std::vector<std::uint8_t> classify_cells(const PointPredicate& member, const GridIndex& g, Exec exec);

struct CellRange {
  double lo, hi;
};

/// Sampled extrema per cell: corners, center, the simplest rational point of
/// the cell, plus `random_samples` stratified random points.
std::vector<CellRange> cell_extrema(const PointOracle& f, const GridIndex& g, unsigned random_samples,
                                    std::uint64_t seed, Exec exec);

}  // namespace brickint
