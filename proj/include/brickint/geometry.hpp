#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brickint/rational.hpp"

namespace brickint {

struct Interval {
  Rational lo, hi;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval closed(Rational lo, Rational hi);
  static Interval open(Rational lo, Rational hi);
  static Interval point(Rational x);

  bool empty() const;
  bool degenerate() const { return lo == hi; }
  bool contains(const Rational& x) const;
  Rational length() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Brick {
  std::vector<Interval> factors;

  Brick() = default;
  explicit Brick(std::vector<Interval> f);

  std::size_t dim() const { return factors.size(); }
  const Interval& operator[](std::size_t k) const { return factors[k]; }
  Interval& operator[](std::size_t k) { return factors[k]; }

  bool contains(const Point& x) const;
  Point center() const;
  Brick closure() const;
  Brick interior() const;
  bool closed() const;

  friend bool operator==(const Brick&, const Brick&) = default;
};

Brick closed_brick(const std::vector<std::pair<Rational, Rational>>& sides);
Brick unit_cube(std::size_t n);

/// Throws Error if any factor is empty or reversed. Degenerate closed
/// factors are fine.
void validate(const Brick& b);

Rational volume(const Brick& b);
std::optional<Interval> intersect(const Interval& a, const Interval& b);
std::optional<Brick> intersect(const Brick& a, const Brick& b);

/// A ⊆ B as point sets, honoring open/closed ends.
bool subset(const Interval& a, const Interval& b);
bool subset(const Brick& a, const Brick& b);

/// Interiors meet (closure-level overlap of positive volume).
bool interiors_overlap(const Brick& a, const Brick& b);

/// Longest side length.
Rational diameter(const Brick& b);

/// Disjoint bricks whose union is a \ b.
std::vector<Brick> difference(const Brick& a, const Brick& b);

/// Product grid of cells, pairwise disjoint, union = ambient, every input
/// brick a union of cells. Cells come in lexicographic order (axis 0 slowest).
std::vector<Brick> common_refinement(const std::vector<Brick>& bricks, const Brick& ambient);

/// Cell (index) geometry for the uniform m-per-axis grid on T without
/// materializing every cell. Cells are half-open except the last slab on
/// each axis; index order is lexicographic with axis 0 slowest.
struct GridIndex {
  Brick ambient;
  unsigned m = 1;

  GridIndex(Brick t, unsigned m);
  std::size_t size() const { return count_; }
  std::vector<unsigned> multi_index(std::size_t i) const;
  Brick cell(std::size_t i) const;
  Point center(std::size_t i) const;
  Rational cell_volume() const;
  /// Index of the unique cell containing x (x must lie in the ambient).
  std::size_t locate(const Point& x) const;

 private:
  std::size_t count_ = 1;
};

struct UniformTiling {
  Brick ambient;
  unsigned m = 1;
  std::vector<Brick> cells;
  std::vector<Point> centers;
};

UniformTiling uniform_tiling(const Brick& t, unsigned m);

/// Open max-norm ball around x of radius r, clipped to T.
Brick max_norm_ball(const Point& x, const Rational& r, const Brick& t);

/// "[0,1]x[0,1/2]" or "[0,1]^2" style ambient text. Closed factors.
Brick parse_ambient(std::string_view text);
std::string format_brick(const Brick& b);

}  // namespace brickint
