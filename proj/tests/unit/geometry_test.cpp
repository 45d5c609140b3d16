#include <gtest/gtest.h>

#include "brickint/geometry.hpp"
#include "brickint/sampling.hpp"

using namespace brickint;

namespace {
Rational q(long p, long d = 1) { return Rational(p, d); }
}

TEST(Interval, Membership) {
  Interval h = Interval::closed(0, 1);
  h.hi_closed = false;
  EXPECT_TRUE(h.contains(0));
  EXPECT_FALSE(h.contains(1));
  EXPECT_TRUE(Interval::point(q(1, 3)).contains(q(1, 3)));
  EXPECT_TRUE(Interval::open(0, 0).empty());
  EXPECT_FALSE(Interval::point(0).empty());
}

TEST(Brick, VolumeAndDiameter) {
  Brick b = closed_brick({{0, q(1, 2)}, {q(1, 3), 1}});
  EXPECT_EQ(volume(b), q(1, 3));
  EXPECT_EQ(diameter(b), q(2, 3));
  EXPECT_EQ(volume(Brick({Interval::point(0), Interval::closed(0, 1)})), 0);
  EXPECT_EQ(b.center(), (Point{q(1, 4), q(2, 3)}));
}

TEST(Brick, ValidateRejectsReversedAndEmpty) {
  EXPECT_THROW(validate(closed_brick({{1, 0}})), Error);
  EXPECT_THROW(validate(Brick({Interval::open(0, 0)})), Error);
  EXPECT_NO_THROW(validate(Brick({Interval::point(0)})));
}

TEST(Brick, IntersectHonorsEnds) {
  Interval a = Interval::closed(0, 1), b = Interval::closed(1, 2);
  auto i = intersect(a, b);
  ASSERT_TRUE(i);
  EXPECT_TRUE(i->degenerate());
  a.hi_closed = false;
  EXPECT_FALSE(intersect(a, b));
  EXPECT_FALSE(interiors_overlap(closed_brick({{0, 1}}), closed_brick({{1, 2}})));
  EXPECT_TRUE(interiors_overlap(closed_brick({{0, 1}}), closed_brick({{q(1, 2), 2}})));
}

TEST(Brick, Subset) {
  Brick open = Brick({Interval::open(0, 1)});
  EXPECT_TRUE(subset(open, unit_cube(1)));
  EXPECT_FALSE(subset(unit_cube(1), open));
  EXPECT_TRUE(subset(Brick({Interval::point(q(1, 2))}), open));
}

TEST(Brick, DifferenceIsDisjointAndExact) {
  Rng rng = stream(7, 0);
  for (int t = 0; t < 50; ++t) {
    Brick a = unit_cube(2);
    Point c = random_point(a, rng, 4), d = random_point(a, rng, 4);
    Brick b({Interval::closed(std::min(c[0], d[0]), std::max(c[0], d[0])),
             Interval::open(std::min(c[1], d[1]), std::max(c[1], d[1]))});
    if (b[1].empty()) continue;
    auto pieces = difference(a, b);
    Rational vol = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      vol += volume(pieces[i]);
      EXPECT_FALSE(intersect(pieces[i], b)) << format_brick(pieces[i]);
      for (std::size_t j = i + 1; j < pieces.size(); ++j) EXPECT_FALSE(intersect(pieces[i], pieces[j]));
    }
    EXPECT_EQ(vol + volume(b), volume(a));
    for (int s = 0; s < 20; ++s) {
      Point x = random_point(a, rng, 3);
      bool in_piece = false;
      for (const auto& p : pieces) in_piece = in_piece || p.contains(x);
      EXPECT_EQ(in_piece, !b.contains(x)) << to_string(x);
    }
  }
}

TEST(Brick, CommonRefinementPartitionsAmbient) {
  Brick t = unit_cube(2);
  std::vector<Brick> inputs = {closed_brick({{0, q(1, 2)}, {q(1, 4), 1}}), Brick({Interval::open(q(1, 3), 1), Interval::point(q(1, 2))})};
  auto cells = common_refinement(inputs, t);
  Rational vol = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    vol += volume(cells[i]);
    for (std::size_t j = i + 1; j < cells.size(); ++j) EXPECT_FALSE(intersect(cells[i], cells[j]));
  }
  EXPECT_EQ(vol, 1);
  for (const auto& in : inputs)
    for (const auto& c : cells) {
      auto i = intersect(c, in);
      if (i) {
        EXPECT_TRUE(subset(c, in));
      }
    }
}

TEST(Grid, CellsTileAndLocate) {
  Brick t = closed_brick({{0, 1}, {0, 2}});
  GridIndex g(t, 4);
  EXPECT_EQ(g.size(), 16u);
  EXPECT_EQ(g.cell_volume(), q(1, 8));
  Rng rng = stream(3, 0);
  for (int s = 0; s < 200; ++s) {
    Point x = random_point(t, rng, 3);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < g.size(); ++i) hits += g.cell(i).contains(x);
    EXPECT_EQ(hits, 1u);
    EXPECT_TRUE(g.cell(g.locate(x)).contains(x));
  }
  EXPECT_TRUE(g.cell(g.locate({1, 2})).contains(Point{1, 2}));
  UniformTiling u = uniform_tiling(t, 3);
  EXPECT_EQ(u.cells.size(), 9u);
  EXPECT_EQ(u.centers[0], (Point{q(1, 6), q(1, 3)}));
}

TEST(Geometry, MaxNormBallIsClipped) {
  Brick b = max_norm_ball({q(1, 8)}, q(1, 4), unit_cube(1));
  EXPECT_EQ(b[0].lo, 0);
  EXPECT_TRUE(b[0].lo_closed);
  EXPECT_EQ(b[0].hi, q(3, 8));
  EXPECT_FALSE(b[0].hi_closed);
}

TEST(Geometry, ParseAmbient) {
  EXPECT_EQ(parse_ambient("[0,1]x[0,1/2]"), closed_brick({{0, 1}, {0, q(1, 2)}}));
  EXPECT_EQ(parse_ambient("[0,1]^3"), unit_cube(3));
  EXPECT_EQ(parse_ambient("[-1,1] x [0,2]"), closed_brick({{-1, 1}, {0, 2}}));
  EXPECT_THROW(parse_ambient("[0,1"), Error);
  EXPECT_THROW(parse_ambient("[1,0]"), Error);
}
