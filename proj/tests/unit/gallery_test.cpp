#include <gtest/gtest.h>

#include <cmath>

#include "brickint/gallery.hpp"
#include "brickint/stepfn.hpp"

using namespace brickint;
using namespace brickint::gallery;

TEST(FatCantor, StagesAndLengths) {
  RemovedIntervals r = fat_cantor(3);
  ASSERT_EQ(r.stages.size(), 3u);
  EXPECT_EQ(r.stages[0].size(), 1u);
  EXPECT_EQ(r.stages[2].size(), 4u);
  EXPECT_EQ(r.stages[0][0].a, Rational(3, 8));
  EXPECT_EQ(r.stages[0][0].b, Rational(5, 8));
  EXPECT_EQ(r.total_length(), Rational(1, 4) + Rational(2, 16) + Rational(4, 64));
  auto pos = r.by_position();
  ASSERT_EQ(pos.size(), 7u);
  for (std::size_t i = 1; i < pos.size(); ++i) EXPECT_LT(pos[i - 1].b, pos[i].a);
  EXPECT_EQ(r.stages[1][0].n, 2u);
  EXPECT_EQ(r.stages[1][1].n, 3u);
  EXPECT_THROW(fat_cantor(0), Error);
}

TEST(FatCantor, RemainingComplementsRemoved) {
  for (unsigned k = 1; k <= 6; ++k) {
    auto rest = fat_cantor_remaining(k);
    EXPECT_EQ(rest.size(), std::size_t(1) << k);
    Rational sum;
    for (const auto& b : rest) sum += volume(b);
    EXPECT_EQ(sum + fat_cantor(k).total_length(), 1);
  }
}

TEST(CantorSine, ValuesAndDomain) {
  CantorSine f(4);
  EXPECT_EQ(f(Rational(0)), 0);
  EXPECT_EQ(f(Rational(1)), 0);
  const Rational x(1, 2);
  const double expected = std::sin(1 / (0.5 - 0.375)) + std::sin(1 / (0.625 - 0.5));
  EXPECT_NEAR(f(x), expected, 1e-12);
  EXPECT_THROW(f(Rational(-1, 2)), EvaluationError);
  EXPECT_EQ(f.intervals().size(), 15u);
  EXPECT_NEAR(f_prop41c(x), expected, 1e-12);
}

TEST(Thomae, ExactAndDecimal) {
  EXPECT_EQ(thomae(Rational(3, 9)), Rational(1, 3));
  EXPECT_EQ(thomae(Rational(0)), 1);
  EXPECT_EQ(thomae(std::nullopt), 0);
  EXPECT_DOUBLE_EQ(thomae_decimal(0.25), 0.25);
  EXPECT_EQ(thomae_decimal(std::sqrt(2.0) - 1), 0.0);
}

TEST(RotatedThomae, Rotation) {
  Rotation g = pythagorean_rotation(3, 4);
  EXPECT_EQ(g.cos * g.cos + g.sin * g.sin, 1);
  EXPECT_THROW(pythagorean_rotation(2, 3), Error);
  // g(1/2, 1/2) = (3/10 - 4/10, 4/10 + 3/10).
  Point p{Rational(-1, 10), Rational(7, 10)};
  EXPECT_EQ(inverse_rotate(p, g), (Point{Rational(1, 2), Rational(1, 2)}));
  EXPECT_DOUBLE_EQ(rotated_thomae(p, g), 0.5);
  EXPECT_EQ(rotated_thomae({Rational(-1), Rational(0)}, g), 0.0);
  EXPECT_EQ(rotated_domain().dim(), 2u);
}

TEST(Sequences, ShrinkingAndRational) {
  EXPECT_EQ(integral(shrinking_indicator(4)), Rational(1, 4));
  EXPECT_EQ(rational_point(1), (Point{Rational(0)}));
  EXPECT_EQ(rational_point(2), (Point{Rational(1)}));
  EXPECT_EQ(rational_point(3), (Point{Rational(1, 2)}));
  EXPECT_EQ(rational_point(4), (Point{Rational(1, 3)}));
  EXPECT_EQ(integral(rational_indicator(5)), 0);
  EXPECT_EQ(evaluate(rational_indicator(5), rational_point(5)), 1);
}

TEST(Fixtures, RegistryAndParameters) {
  auto names = fixture_names();
  EXPECT_GE(names.size(), 10u);
  for (const auto& n : names) {
    Fixture f = make_fixture(n);
    EXPECT_EQ(f.name, n);
    EXPECT_TRUE(f.eval) << n;
  }
  Fixture a = make_fixture("gallery:f_prop41c?k=3");
  EXPECT_EQ(a.params.at("k"), "3");
  EXPECT_EQ(make_fixture("thomae_sheet").name, "thomae-sheet");
  EXPECT_THROW(make_fixture("nope"), Error);
  EXPECT_THROW(make_fixture("thomae?zzz=1"), Error);
  Fixture s = make_fixture("step_edge");
  EXPECT_EQ(s.eval({Rational(3, 4)}), 1.0);
  EXPECT_EQ(s.eval({Rational(1, 2)}), 0.0);
}
