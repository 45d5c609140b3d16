#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace brickint::cli {

enum ExitCode : int { ok = 0, failure = 1, negative_verdict = 2, tolerance_not_reached = 3 };

std::string report_schema_version();

/// args excludes the program name. Reports go to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brickint::cli
