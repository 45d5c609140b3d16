#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "brickint/geometry.hpp"

namespace brickint {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Independent stream for item `index` under a run seed; the same (seed,
/// index) pair yields the same stream regardless of thread scheduling.
Rng stream(std::uint64_t seed, std::uint64_t index);

/// Dyadic rational strictly inside (lo, hi) (or lo itself when degenerate),
/// with 2^-bits relative resolution.
Rational random_dyadic(const Interval& f, Rng& rng, unsigned bits = 20);

/// Same, restricted to the j-th of `strata` equal slices of the interval.
Rational stratified_dyadic(const Interval& f, unsigned j, unsigned strata, Rng& rng, unsigned bits = 20);

Point random_point(const Brick& b, Rng& rng, unsigned bits = 20);

/// Latin-hypercube sample of `count` points in the (relative) interior of b.
std::vector<Point> latin_hypercube(const Brick& b, unsigned count, Rng& rng, unsigned bits = 20);

}  // namespace brickint
