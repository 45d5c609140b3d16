#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brickint/jordan.hpp"
#include "brickint/stepfn.hpp"

namespace brickint::gallery {

struct RemovedInterval {
  Rational a, b;  // open interval (a, b)
  unsigned stage = 0;
  std::size_t n = 0;  // enumeration index: stage-major, left to right, from 1
};

struct RemovedIntervals {
  std::vector<std::vector<RemovedInterval>> stages;
  Rational total_length() const;
  /// All intervals ordered by position.
  std::vector<RemovedInterval> by_position() const;
};

/// Stage s removes the open middle piece of length 4^-s from each of the
/// 2^(s-1) intervals left by the previous stage.
RemovedIntervals fat_cantor(unsigned k);

/// The 2^k closed intervals left after k stages (a closed superset of S).
std::vector<Brick> fat_cantor_remaining(unsigned k);

/// f = (1/n)(sin 1/(x - a_n) + sin 1/(b_n - x)) on the removed intervals of
/// the first k stages and 0 elsewhere.
class CantorSine {
 public:
  explicit CantorSine(unsigned k = 8);
  double operator()(const Rational& x) const;
  unsigned stages() const { return k_; }
  const std::vector<RemovedInterval>& intervals() const { return sorted_; }

 private:
  unsigned k_;
  std::vector<RemovedInterval> sorted_;
};

double f_prop41c(const Rational& x, unsigned k = 8);

/// 1 if 0 <= y <= f(x) + 2, else 0, on [0,1] x [0,4].
double h_fixture(const CantorSine& f, const Rational& x, const Rational& y);

/// Exact Thomae function; nullopt stands for an irrational input.
Rational thomae(const std::optional<Rational>& x);

/// Thomae on a decimal: 1/q when x is within 1e-12 of some p/q with
/// q <= bound, otherwise 0.
double thomae_decimal(double x, std::int64_t bound = 10000);

struct Rotation {
  Rational cos, sin;  // exact, cos^2 + sin^2 = 1
};

/// Rotation with cos = a/c, sin = b/c for a Pythagorean triple a^2 + b^2 = c^2.
Rotation pythagorean_rotation(long a, long b);

/// g^{-1} p.
Point inverse_rotate(const Point& p, const Rotation& g);

/// (H o pr_1)(g^{-1} p) when g^{-1} p lies in [0,1]^2, else 0.
double rotated_thomae(const Point& p, const Rotation& g);

/// Decimal input: pre-image rationality decided by thomae_decimal(bound).
double rotated_thomae_decimal(double x, double y, const Rotation& g, std::int64_t bound = 10000);

/// Bounding brick [-1,1] x [0,2] of g([0,1]^2) for rotations in (0, pi/2).
Brick rotated_domain();

/// chi_[0,1/m] on [0,1].
StepFunction shrinking_indicator(std::size_t m);

/// q_m (m >= 1) of the enumeration of Q^n in [0,1]^n by common denominator,
/// then lexicographic numerators.
Point rational_point(std::size_t m, std::size_t n = 1);

/// chi_{q_m} on [0,1]^n (degenerate support).
StepFunction rational_indicator(std::size_t m, std::size_t n = 1);

struct Fixture {
  std::string name;
  Brick ambient;
  PointOracle eval;
  PointPredicate support;
  std::optional<Rational> bound;
  std::map<std::string, std::string> params;
  std::string description;
};

/// "f_prop41c?k=8", with or without a leading "gallery:".
Fixture make_fixture(std::string_view ref);
std::vector<std::string> fixture_names();

}  // namespace brickint::gallery
