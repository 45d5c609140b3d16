#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brickint/jordan.hpp"
#include "brickint/kernels.hpp"

namespace brickint {

/// Components in {-1, 0, 1}, not all zero.
using Direction = std::vector<int>;

/// All 3^n - 1 directions, lexicographic in (-1, 0, 1).
std::vector<Direction> all_directions(std::size_t n);

/// The 2^n directions without zero components.
std::vector<Direction> orthant_directions(std::size_t n);

std::string format_direction(const Direction& a);

/// T_{x,alpha}: per axis [a_k, x_k), {x_k} or (x_k, b_k]. x must be interior.
Brick subbrick(const Brick& t, const Point& x, const Direction& alpha);

/// Same with closed factors (used for one-sided strong derivatives).
Brick closed_subbrick(const Brick& t, const Point& x, const Direction& alpha);

struct LimitConfig {
  std::vector<Rational> radii;  // strictly decreasing
  unsigned samples = 64;        // Latin-hypercube samples per radius
  unsigned lattice = 8;         // lattice probes x + r v / lattice, v in {1..lattice-1}^d
  double tol = 1e-3;
  std::uint64_t seed = 1;
};

/// 2^-3, ..., 2^-12.
std::vector<Rational> default_radii();
LimitConfig default_limit_config();

struct RadiusRow {
  Rational radius;
  double mean = 0, min = 0, max = 0;
  std::size_t count = 0;
  double oscillation() const { return max - min; }
};

struct LimitEstimate {
  bool exists = false;
  double value = 0;        // mean at the final radius
  double oscillation = 0;  // at the final radius
  std::vector<RadiusRow> rows;
  std::string error;  // set when the oracle failed
};

LimitEstimate directional_limit(const PointOracle& f, const Brick& t, const Point& x, const Direction& alpha,
                                const LimitConfig& cfg);

enum class PointKind { continuous, first_kind, second_kind_suspect, undetermined };
std::string to_string(PointKind k);

struct Classification {
  PointKind kind = PointKind::undetermined;
  std::optional<double> fx;
  std::vector<std::pair<Direction, LimitEstimate>> per_direction;
};

Classification classify(const PointOracle& f, const Brick& t, const Point& x, const LimitConfig& cfg);

/// True when some direction at x shows no limit. Uses only the finest two
/// radii of cfg and stops at the first failing direction.
bool second_kind_probe(const PointOracle& f, const Brick& t, const Point& x, const LimitConfig& cfg);

/// Dyadic cells (2^depth per axis) whose centers look like second-kind points.
ExceptionCover dis2_cover(const PointOracle& f, const Brick& t, unsigned depth, const LimitConfig& cfg,
                          Exec exec = Exec::parallel);

enum class IntegrabilityVerdict { likely_integrable, not_integrable_evidence, undetermined };
std::string to_string(IntegrabilityVerdict v);

struct DecisionRow {
  unsigned depth = 0;
  Rational dis2_volume;
  Rational unbounded_volume;  // cells whose center value exceeds C
};

struct DecisionReport {
  IntegrabilityVerdict verdict = IntegrabilityVerdict::undetermined;
  Rational floor;
  std::vector<DecisionRow> rows;
};

/// Finite-resolution reading of the criterion "bounded off a null set and the
/// second-kind points form a null set". Default floor: vol(T) / 16.
DecisionReport decide_k_integrability(const PointOracle& f, const Brick& t, const std::vector<unsigned>& depths,
                                      const std::optional<Rational>& c, const LimitConfig& cfg,
                                      const std::optional<Rational>& floor = std::nullopt,
                                      Exec exec = Exec::parallel);

}  // namespace brickint
