#pragma once

#include <optional>
#include <vector>

#include "brickint/geometry.hpp"
#include "brickint/kernels.hpp"

namespace brickint {

/// Finitely many bricks with their exact total volume.
struct ExceptionCover {
  std::vector<Brick> bricks;
  Rational total_volume = 0;

  ExceptionCover() = default;
  explicit ExceptionCover(std::vector<Brick> bs);

  void add(Brick b);
  bool contains(const Point& x) const;
  bool empty() const { return bricks.empty(); }
};

struct ContentBounds {
  Rational inner, outer;
  unsigned depth = 0;
  Rational gap() const { return outer - inner; }
};

/// Inner/outer content on the 2^depth-per-axis dyadic grid, classifying each
/// cell by its corners and center.
ContentBounds content_bounds(const PointPredicate& member, const Brick& t, unsigned depth, Exec exec = Exec::parallel);

/// Cells of the uniform m-grid whose samples disagree.
ExceptionCover boundary_cells_grid(const PointPredicate& member, const Brick& t, unsigned m, Exec exec = Exec::parallel);

/// Same on the dyadic grid of the given depth.
ExceptionCover boundary_cells(const PointPredicate& member, const Brick& t, unsigned depth, Exec exec = Exec::parallel);

/// Closed cubes around each point, total volume at most eps/2. nullopt when
/// eps <= 0.
std::optional<ExceptionCover> certify_null(const std::vector<Point>& points, const Rational& eps);

/// A given cover certifies "null at level eps" iff its total volume is < eps.
std::optional<ExceptionCover> certify_null(const ExceptionCover& cover, const Rational& eps);

}  // namespace brickint
