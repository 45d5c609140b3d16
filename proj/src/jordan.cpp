#include "brickint/jordan.hpp"

namespace brickint {

ExceptionCover::ExceptionCover(std::vector<Brick> bs) {
  for (auto& b : bs) add(std::move(b));
}

void ExceptionCover::add(Brick b) {
  validate(b);
  total_volume += volume(b);
  bricks.push_back(std::move(b));
}

bool ExceptionCover::contains(const Point& x) const {
  for (const auto& b : bricks)
    if (b.contains(x)) return true;
  return false;
}

namespace {

unsigned dyadic_m(unsigned depth) {
  if (depth == 0 || depth > 30) throw Error("depth must be in 1..30");
  return 1u << depth;
}

}  // namespace

ContentBounds content_bounds(const PointPredicate& member, const Brick& t, unsigned depth, Exec exec) {
  GridIndex g(t, dyadic_m(depth));
  auto state = classify_cells(member, g, exec);
  std::size_t inside = 0, touched = 0;
  for (auto s : state) {
    if (s == cell_inside) ++inside;
    if (s != cell_outside) ++touched;
  }
  Rational cv = g.cell_volume();
  return {cv * static_cast<unsigned long>(inside), cv * static_cast<unsigned long>(touched), depth};
}

ExceptionCover boundary_cells_grid(const PointPredicate& member, const Brick& t, unsigned m, Exec exec) {
  GridIndex g(t, m);
  auto state = classify_cells(member, g, exec);
  ExceptionCover cover;
  for (std::size_t i = 0; i < state.size(); ++i)
    if (state[i] == cell_mixed) cover.add(g.cell(i).closure());
  return cover;
}

ExceptionCover boundary_cells(const PointPredicate& member, const Brick& t, unsigned depth, Exec exec) {
  return boundary_cells_grid(member, t, dyadic_m(depth), exec);
}

std::optional<ExceptionCover> certify_null(const std::vector<Point>& points, const Rational& eps) {
  if (eps <= 0) return std::nullopt;
  if (points.empty()) return ExceptionCover{};
  const std::size_t n = points.front().size();
  const Rational budget = eps / (2 * static_cast<unsigned long>(points.size()));
  // side^n <= budget: exact for n = 1, otherwise the largest dyadic side that fits
  Rational side;
  if (n == 1) {
    side = budget;
  } else {
    side = 1;
    auto fits = [&](const Rational& s) {
      Rational p = 1;
      for (std::size_t k = 0; k < n; ++k) p *= s;
      return p <= budget;
    };
    while (!fits(side)) side /= 2;
  }
  ExceptionCover cover;
  for (const auto& x : points) {
    if (x.size() != n) throw Error("certify_null: mixed point dimensions");
    Brick cube;
    for (const auto& c : x) cube.factors.push_back(Interval::closed(c - side / 2, c + side / 2));
    cover.add(std::move(cube));
  }
  if (!(cover.total_volume < eps)) return std::nullopt;
  return cover;
}

std::optional<ExceptionCover> certify_null(const ExceptionCover& cover, const Rational& eps) {
  if (cover.total_volume < eps) return cover;
  return std::nullopt;
}

}  // namespace brickint
