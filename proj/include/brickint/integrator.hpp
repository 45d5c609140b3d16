#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brickint/convergence.hpp"
#include "brickint/kernels.hpp"

namespace brickint {

struct IntegrandSpec {
  Brick ambient;
  PointOracle eval;
  /// Optional set C outside of which eval vanishes; its boundary cells become
  /// the exception covers of the certificate.
  PointPredicate support;
  std::optional<Rational> claimed_bound;
};

/// Centers of uniform_tiling(T, m) sampled and rounded to `precision`.
StepFunction sample_step(const IntegrandSpec& f, unsigned m, const Rational& precision = precision_from_env());

/// integral(sample_step(f, m)) without materializing the step function.
Rational midpoint_integral(const IntegrandSpec& f, unsigned m, const Rational& precision = precision_from_env(),
                           Exec exec = Exec::parallel);

std::vector<unsigned> default_schedule();  // 8, 16, ..., 512

struct IntegrateOptions {
  Rational tol{1, 1000};
  std::vector<unsigned> schedule = default_schedule();
  Rational precision = precision_from_env();
  Exec exec = Exec::parallel;
};

struct IntegrationStep {
  unsigned m = 0;
  Rational value;
  Rational cover_volume;
  Rational bound;  // gap to previous step plus cover term (0 for the first)
};

struct IntegrateResult {
  Rational value;
  Rational error_bound;
  unsigned m = 0;
  bool reached = false;
  std::size_t terms_used = 0;  // schedule positions consumed
  double range_lo = 0, range_hi = 0;
  Rational bound_used;  // C used in the cover term
  NUCertificate certificate;  // empirical: tail sups are twice the probed sup |g_m - f| off the cover
  std::vector<IntegrationStep> history;
};

/// Runs the schedule until |I_m - I_prev| + osc * vol(cover_m) <= tol, with
/// osc the observed value range capped at 2C. When the tolerance is never
/// met, `reached` is false and the last step's bound is reported.
IntegrateResult k_integrate(const IntegrandSpec& f, const IntegrateOptions& opts = {});

/// Iterated one-dimensional midpoint sums, innermost (last) axis first.
Rational fubini(const IntegrandSpec& f, unsigned m, const Rational& precision = precision_from_env());

/// Integral over the trailing axes with the first prefix.size() coordinates
/// fixed.
Rational inner_integral(const IntegrandSpec& f, const Point& prefix, unsigned m,
                        const Rational& precision = precision_from_env());

/// x (first k coordinates) -> inner_integral, as an integrand on the first k
/// factors of the ambient.
IntegrandSpec inner_integrand(const IntegrandSpec& f, std::size_t k, unsigned m,
                              const Rational& precision = precision_from_env());

struct DarbouxSums {
  double lower = 0, upper = 0;
  unsigned m = 0;
  double gap() const { return upper - lower; }
};

DarbouxSums darboux(const IntegrandSpec& f, unsigned m, unsigned samples_per_cell, std::uint64_t seed = 1,
                    Exec exec = Exec::parallel);

/// Pointwise median of -C, f, C.
IntegrandSpec truncate(const IntegrandSpec& f, const Rational& c);

/// Zero outside the original ambient; requires T inside D.
IntegrandSpec extend(const IntegrandSpec& f, const Brick& d);

}  // namespace brickint
