#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "brickint/jordan.hpp"
#include "brickint/stepfn.hpp"

namespace brickint {

/// g_1, g_2, ... ; indices start at 1.
using StepSequence = std::function<StepFunction(std::size_t m)>;

struct NUEntry {
  Rational delta;
  ExceptionCover cover;
  std::size_t tail_index = 1;
  Rational tail_sup;
};

/// Finite surrogate for nearly uniform convergence: uniform bound C and a
/// schedule of (delta, cover, tail index, tail sup) entries.
struct NUCertificate {
  Rational uniform_bound;
  std::vector<NUEntry> schedule;
};

/// Throws Error unless: cover volume < delta, deltas strictly decreasing,
/// tail_sup nonincreasing and >= 0, C >= 0, schedule nonempty.
void validate(const NUCertificate& cert);

struct NUVerdict {
  bool pass = true;
  std::optional<std::size_t> failed_entry;
  std::optional<std::size_t> failed_index;  // the m that broke it
  std::string reason;
};

struct VerifyOptions {
  std::size_t horizon = 16;  // m checked in [tail_index, tail_index + horizon]
  std::size_t samples = 256;
  std::uint64_t seed = 1;
  double slack = 1e-9;  // oracle targets only: rounding allowance
  std::optional<std::size_t> last_index;  // sequences known only up to this index
};

using Target = std::variant<StepFunction, PointOracle>;

NUVerdict verify_nu(const StepSequence& seq, const Target& target, const NUCertificate& cert,
                    const VerifyOptions& opts = {});

struct KIntegralResult {
  Rational value;
  Rational error_bound;
  std::size_t terms_used = 0;
  std::size_t entry = 0;
};

/// error bound of one entry: tail_sup * vol(T) + 2 C delta (the cover term
/// drops out when the cover is empty).
Rational entry_error_bound(const NUEntry& e, const Rational& c, const Rational& ambient_volume);

/// Integral of g_m for the first entry whose bound is <= tol. Throws Error
/// if the schedule runs out first.
KIntegralResult k_integral(const StepSequence& seq, const NUCertificate& cert, const Rational& tol);

}  // namespace brickint
