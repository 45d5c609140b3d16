#pragma once

#include <string>

#include "json.hpp"

#include "brickint/convergence.hpp"
#include "brickint/jordan.hpp"
#include "brickint/stepfn.hpp"

namespace brickint::io {

/// Insertion-ordered, so identical inputs dump to identical bytes.
using Json = nlohmann::ordered_json;

/// Rationals are "p/q" strings; integers are also accepted on input.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

/// [lo, hi, lo_closed, hi_closed]
Json to_json(const Interval& i);
Interval interval_from_json(const Json& j);

/// One factor array per axis.
Json to_json(const Brick& b);
Brick brick_from_json(const Json& j);

/// {ambient, terms: [{coeff, brick}]}
Json to_json(const StepFunction& g);
StepFunction step_from_json(const Json& j);

/// List of bricks.
Json to_json(const ExceptionCover& c);
ExceptionCover cover_from_json(const Json& j);

/// {uniform_bound, schedule: [{delta, cover, tail_index, tail_sup}]}
Json to_json(const NUCertificate& c);
NUCertificate certificate_from_json(const Json& j);

Json to_json(const Point& x);
Point point_from_json(const Json& j);

std::string read_file(const std::string& path);

/// Writes to a sibling temporary file, then renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace brickint::io
