#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace brickint {

using Rational = mpq_class;

/// A point of R^n with exact rational coordinates.
using Point = std::vector<Rational>;

/// Real-valued oracle on exact points. Must be reentrant: kernels call it
/// from several threads at once.
using PointOracle = std::function<double(const Point&)>;
using PointPredicate = std::function<bool(const Point&)>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised by oracles for arithmetic domain failures (division by zero etc.).
struct EvaluationError : Error {
  using Error::Error;
};

/// Parses "p/q", "p", or a finite decimal such as "-0.125" or "1e-3" exactly.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Point& x);

double to_double(const Rational& q);
std::vector<double> to_doubles(const Point& x);

/// Exact conversion of a finite double.
Rational from_double(double v);

/// Nearest integer to v / precision (ties away from zero). Throws on NaN/inf.
mpz_class round_units(double v, const Rational& precision);

/// Nearest multiple of `precision` (ties away from zero). Throws on NaN/inf.
Rational round_to_grid(double v, const Rational& precision);

/// The default decimal-to-rational rounding step, 10^-12.
const Rational& default_precision();

/// Reads BRICKINT_PRECISION (e.g. "1e-9" or "1/1000000"); falls back to the
/// default when unset.
Rational precision_from_env();

/// 10^-k as an exact rational.
Rational pow10_inverse(unsigned k);

/// 2^-k as an exact rational.
Rational pow2_inverse(unsigned k);

Rational abs(const Rational& q);

/// Smallest-denominator rational strictly inside (lo, hi); lo < hi required.
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Best rational approximation with denominator <= max_den, via continued
/// fractions.
Rational best_approximation(double v, std::int64_t max_den);

}  // namespace brickint
