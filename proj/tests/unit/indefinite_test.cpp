#include <gtest/gtest.h>

#include <cmath>

#include "brickint/indefinite.hpp"

using namespace brickint;

namespace {
IntegrandSpec linear() {
  return {unit_cube(1), [](const Point& x) { return x[0].get_d(); }, {}, Rational(1)};
}
IntegrandSpec step_edge() {
  const Rational half(1, 2);
  return {unit_cube(1), [half](const Point& x) { return x[0] > half ? 1.0 : 0.0; },
          [half](const Point& x) { return x[0] > half; }, Rational(1)};
}
}  // namespace

TEST(Psi, LinearIntegrand) {
  PsiValue v = psi(linear(), Brick{{Interval::closed(0, Rational(1, 2))}});
  EXPECT_NEAR(v.value, 0.125, 1e-3);
  EXPECT_LE(v.error_bound, 1e-3);
  EXPECT_EQ(psi(linear(), Brick{{Interval::point(Rational(1, 3))}}).value, 0);
}

TEST(Psi, Additive) {
  IndefiniteIntegral p = make_psi(step_edge());
  const Rational c(3, 8);
  double whole = p.value(Brick{{Interval::closed(Rational(1, 4), Rational(3, 4))}}).value;
  double left = p.value(Brick{{Interval::closed(Rational(1, 4), c)}}).value;
  double right = p.value(Brick{{Interval::closed(c, Rational(3, 4))}}).value;
  EXPECT_NEAR(whole, left + right, 1e-3);
  EXPECT_NEAR(whole, 0.25, 1e-3);
}

TEST(Derivative, LinearRecoversValue) {
  IndefiniteIntegral p = make_psi(linear());
  DerivativeEstimate d = strong_derivative(p, {Rational(1, 3)}, default_deriv_options());
  EXPECT_TRUE(d.stable);
  EXPECT_NEAR(d.value, 1.0 / 3, 1e-2);
  EXPECT_FALSE(d.rows.empty());
}

TEST(Derivative, StepIsOnlyOneSidedAtEdge) {
  IndefiniteIntegral p = make_psi(step_edge());
  const Point u{Rational(1, 2)};
  DerivOptions o = default_deriv_options();
  EXPECT_FALSE(strong_derivative(p, u, o).stable);
  DerivativeEstimate l = directional_strong_derivative(p, u, {-1}, o);
  DerivativeEstimate r = directional_strong_derivative(p, u, {1}, o);
  EXPECT_TRUE(l.stable);
  EXPECT_TRUE(r.stable);
  EXPECT_NEAR(l.value, 0, 1e-2);
  EXPECT_NEAR(r.value, 1, 1e-2);
}

TEST(Reconstruct, AwayFromEdge) {
  IndefiniteIntegral p = make_psi(step_edge());
  Reconstruction r = reconstruct(p, {Rational(3, 4)}, default_deriv_options());
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1, 1e-2);
  EXPECT_FALSE(r.sup_by_radius.empty());
}

TEST(PsiChecks, StepFunctionChecks) {
  IndefiniteIntegral p = make_psi(step_edge());
  PsiCheckReport rep = check_theorem54(p, 10, default_deriv_options());
  EXPECT_TRUE(rep.additive_within_bounds);
  EXPECT_NEAR(rep.lipschitz_L, 1, 0.05);
  EXPECT_GT(rep.points, 0u);
  EXPECT_GE(rep.derivative_coverage, 0.85);
  for (const auto& u : rep.unstable_points) EXPECT_LE(abs(u[0] - Rational(1, 2)), Rational(1, 8)) << to_string(u);
  EXPECT_LE(rep.unstable_cover.total_volume, Rational(1, 8));
}
