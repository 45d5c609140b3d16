#pragma once

#include <functional>
#include <string>
#include <vector>

#include "brickint/directional.hpp"
#include "brickint/stepfn.hpp"

namespace brickint {

/// Positive radius function delta(x).
using Gauge = std::function<double(const Point&)>;

struct TaggedCell {
  Brick cell;  // closed
  Point tag;
};

using DottedPartition = std::vector<TaggedCell>;

/// Recursive bisection of every axis until each cell fits in the open
/// max-norm ball around its center. Depth-first, children in lexicographic
/// order. Throws Error when depth_limit is exceeded or the gauge is not
/// positive.
DottedPartition cousin_partition(const Gauge& gauge, const Brick& t, unsigned depth_limit);

struct FineVerdict {
  bool pass = true;
  int bullet = 0;  // 1 closed cell inside T, 2 interiors disjoint, 3 cells cover T, 4 tag in cell inside ball
  std::size_t index = 0;
  std::string reason;
};

FineVerdict verify_fine(const DottedPartition& p, const Gauge& gauge, const Brick& t);

/// Largest r with the open ball B(x, r) inside one of the open cover bricks
/// (the first one containing x); 0 when x is not inside the cover.
Rational cover_ball_radius(const std::vector<Brick>& open_cover, const Point& x);

/// Lighter limit estimation used for gauge construction: radii 2^-10..2^-12,
/// 16 samples, lattice 4.
LimitConfig sufficiency_limits();

struct SufficiencyConfig {
  LimitConfig limits = sufficiency_limits();
  unsigned depth_limit = 16;
  unsigned radius_steps = 14;  // candidate radii diam(T), diam/2, ...
  unsigned check_samples = 32;
};

struct SufficiencyResult {
  StepFunction g;
  DottedPartition partition;
  std::size_t tags_in_cover = 0;
};

/// One g_m of the sufficiency construction: gauge from the cover and the
/// directional moduli, a Cousin partition, then f(tag), directional limits or
/// 0 on the "first cell containing y" pieces. Throws EvaluationError when an
/// off-cover tag has no directional limit.
SufficiencyResult sufficiency_step(const PointOracle& f, const Brick& t, const std::vector<Brick>& cover,
                                   const Rational& c, unsigned m, const SufficiencyConfig& cfg = {});

struct AdditiveSetFunction {
  std::function<double(const Brick&)> value;
  Rational lipschitz;
};

struct AuditResult {
  bool certified = false;
  double sum_in_h = 0, sum_off_h = 0;
  std::size_t cells_in_h = 0, cells_off_h = 0;
  std::string reason;
};

/// The two-sum audit behind "zero derivative a.e. implies zero": partitions S
/// with the cover-ball radius on tags inside null_cover and deriv_radius
/// elsewhere, and checks both sums stay below c/2.
AuditResult zero_derivative_audit(const AdditiveSetFunction& phi, const std::vector<Brick>& null_cover, const Brick& s,
                                  const Rational& c, const Gauge& deriv_radius, unsigned depth_limit = 24);

}  // namespace brickint
