#pragma once

#include <functional>
#include <string>
#include <vector>

#include "brickint/directional.hpp"
#include "brickint/integrator.hpp"

namespace brickint {

struct PsiValue {
  double value = 0;
  double error_bound = 0;
};

/// Psi: closed sub-bricks of T -> value with error bound.
struct IndefiniteIntegral {
  Brick ambient;
  std::function<PsiValue(const Brick&)> value;
};

struct PsiOptions {
  double rel_tol = 1e-4;      // error target relative to vol(S)
  std::size_t max_cells = 1u << 18;  // cap on m^n for the schedule
  Rational precision = precision_from_env();
};

/// Psi(S) = K-integral of f over S via k_integrate with a schedule of powers
/// of two; degenerate S gives 0.
PsiValue psi(const IntegrandSpec& f, const Brick& s, const PsiOptions& opts = {});

IndefiniteIntegral make_psi(const IntegrandSpec& f, const PsiOptions& opts = {});

struct DerivOptions {
  std::vector<Rational> radii;  // strictly decreasing
  unsigned probes = 40;
  double tol = 1e-2;
  std::uint64_t seed = 1;
};

/// 2^-3, ..., 2^-10.
DerivOptions default_deriv_options();

struct RatioRow {
  Rational radius;
  double min = 0, max = 0, mean = 0;
  std::size_t count = 0;
};

struct DerivativeEstimate {
  double value = 0;
  double radius_used = 0;
  double spread = 0;
  bool stable = false;
  std::vector<RatioRow> rows;
};

/// Ratios Psi(S)/vol(S) over random closed bricks in B(u, r): cubes around u,
/// skewed bricks up to 2^8:1, and bricks that miss u.
DerivativeEstimate strong_derivative(const IndefiniteIntegral& psi, const Point& u, const DerivOptions& opts);

/// Same with probes inside the closed orthant closure(T_{u,alpha}).
DerivativeEstimate directional_strong_derivative(const IndefiniteIntegral& psi, const Point& u, const Direction& alpha,
                                                 const DerivOptions& opts);

struct Reconstruction {
  bool converged = false;
  double value = 0;
  std::vector<std::pair<Rational, double>> sup_by_radius;
  std::string note;
};

/// lim_{r -> 0} sup { Psi(S)/vol(S) : S in B(x, r) } over the probed bricks.
Reconstruction reconstruct(const IndefiniteIntegral& psi, const Point& x, const DerivOptions& opts);

struct PsiCheckReport {
  double lipschitz_L = 0;
  double additivity_max_residual = 0;
  double additivity_max_allowed = 0;
  bool additive_within_bounds = true;
  double derivative_coverage = 0;   // fraction of probe points with a stable strong derivative
  double directional_coverage = 0;  // fraction with all 2^n directional derivatives stable
  std::size_t points = 0;
  std::vector<Point> unstable_points;
  ExceptionCover unstable_cover;  // cubes of the final radius around unstable points
  std::vector<Point> directional_unstable_points;
};

/// Samples bricks and splits for the Lipschitz/additivity conditions and
/// points of the 2^-6 grid for the derivative conditions.
PsiCheckReport check_theorem54(const IndefiniteIntegral& psi, unsigned trials, const DerivOptions& opts);

}  // namespace brickint
