#pragma once

#include <vector>

#include "brickint/geometry.hpp"

namespace brickint {

struct Term {
  Rational coeff;
  Brick support;
};

/// Finite sum of c_j * indicator(T_j) over an ambient brick. Supports may
/// overlap; nothing is normalized until canonicalize() is asked for.
struct StepFunction {
  Brick ambient;
  std::vector<Term> terms;

  StepFunction() = default;
  explicit StepFunction(Brick t) : ambient(std::move(t)) {}
  StepFunction(Brick t, std::vector<Term> ts);

  void add(Rational c, Brick support);
};

StepFunction indicator(const Brick& ambient, const Brick& support, const Rational& c = 1);

Rational evaluate(const StepFunction& g, const Point& x);
Rational integral(const StepFunction& g);

/// Pointwise-equal representation on the common refinement of the supports;
/// only nonzero cells are kept, in lexicographic cell order.
StepFunction canonicalize(const StepFunction& g);

StepFunction combine(const Rational& a, const StepFunction& g1, const Rational& b, const StepFunction& g2);

/// Exact sup |g1 - g2| over ambient minus the union of the exception bricks.
Rational sup_diff_outside(const StepFunction& g1, const StepFunction& g2, const std::vector<Brick>& exceptions);

/// max |g| over the ambient.
Rational sup_abs(const StepFunction& g);

/// Sum of support volumes (the M-term bound of |integral|).
Rational support_volume_sum(const StepFunction& g);

}  // namespace brickint
