#include <gtest/gtest.h>

#include "brickint/convergence.hpp"
#include "brickint/gallery.hpp"

using namespace brickint;

namespace {

// g_m = indicator [0, 1/m]: tends to 0 off any cover of 0 of length > 1/m
StepSequence shrinking() {
  return [](std::size_t m) { return gallery::shrinking_indicator(m); };
}

NUCertificate shrinking_certificate() {
  NUCertificate c;
  c.uniform_bound = 1;
  for (unsigned k = 1; k <= 6; ++k) {
    const std::size_t m = std::size_t(1) << (k + 1);
    NUEntry e;
    e.delta = Rational(4, static_cast<unsigned long>(m));
    e.cover.add(closed_brick({{0, Rational(2, static_cast<unsigned long>(m))}}));
    e.tail_index = m;
    e.tail_sup = 0;
    c.schedule.push_back(e);
  }
  return c;
}

}  // namespace

TEST(Convergence, ValidateRejectsBadSchedules) {
  NUCertificate c = shrinking_certificate();
  EXPECT_NO_THROW(validate(c));
  NUCertificate fat = c;
  fat.schedule[0].delta = fat.schedule[0].cover.total_volume;
  EXPECT_THROW(validate(fat), Error);
  NUCertificate rising = c;
  rising.schedule[1].delta = rising.schedule[0].delta;
  EXPECT_THROW(validate(rising), Error);
  NUCertificate tails = c;
  tails.schedule[0].tail_sup = 0;
  tails.schedule[1].tail_sup = 1;
  EXPECT_THROW(validate(tails), Error);
  EXPECT_THROW(validate(NUCertificate{}), Error);
}

TEST(Convergence, ShrinkingIndicatorConvergesToZero) {
  NUCertificate c = shrinking_certificate();
  StepFunction zero(unit_cube(1));
  NUVerdict v = verify_nu(shrinking(), zero, c);
  EXPECT_TRUE(v.pass) << v.reason;
  KIntegralResult r = k_integral(shrinking(), c, Rational(1, 10));
  EXPECT_LE(abs(r.value), Rational(1, 10));
  EXPECT_LE(r.error_bound, Rational(1, 10));
}

TEST(Convergence, OracleTargetSampling) {
  PointOracle zero = [](const Point&) { return 0.0; };
  EXPECT_TRUE(verify_nu(shrinking(), zero, shrinking_certificate()).pass);
}

TEST(Convergence, DetectsWrongTarget) {
  StepFunction one = indicator(unit_cube(1), unit_cube(1));
  NUVerdict v = verify_nu(shrinking(), one, shrinking_certificate());
  EXPECT_FALSE(v.pass);
  ASSERT_TRUE(v.failed_entry);
  EXPECT_EQ(*v.failed_entry, 0u);
}

TEST(Convergence, DetectsTooSmallCover) {
  NUCertificate c = shrinking_certificate();
  // cover [0, 1/m) misses the closed end 1/m of g_m
  for (auto& e : c.schedule) {
    ExceptionCover thin;
    thin.add(Brick({Interval{0, Rational(1, static_cast<unsigned long>(e.tail_index)), true, false}}));
    e.cover = thin;
  }
  StepFunction zero(unit_cube(1));
  EXPECT_FALSE(verify_nu(shrinking(), zero, c).pass);
}

TEST(Convergence, DetectsUniformBoundViolation) {
  NUCertificate c = shrinking_certificate();
  c.uniform_bound = Rational(1, 2);
  EXPECT_FALSE(verify_nu(shrinking(), StepFunction(unit_cube(1)), c).pass);
}

TEST(Convergence, ErrorBoundFormula) {
  NUEntry e;
  e.delta = Rational(1, 10);
  e.tail_sup = Rational(1, 100);
  EXPECT_EQ(entry_error_bound(e, 3, 2), Rational(1, 50));
  e.cover.add(closed_brick({{0, Rational(1, 20)}}));
  EXPECT_EQ(entry_error_bound(e, 3, 2), Rational(1, 50) + Rational(6, 10));
}

TEST(Convergence, KIntegralThrowsWhenScheduleExhausted) {
  EXPECT_THROW(k_integral(shrinking(), shrinking_certificate(), Rational(1, 1000000)), Error);
}
