#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brickint/gallery.hpp"
#include "brickint/geometry.hpp"

namespace brickint::dsl {

struct ParseError : Error {
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line, column;  // 1-based
  std::string detail;
};

struct Expr;
struct Cond;
using ExprPtr = std::shared_ptr<const Expr>;
using CondPtr = std::shared_ptr<const Cond>;

enum class Cmp { lt, le, gt, ge, eq, ne };

struct Cond {
  enum class Kind { compare, conj, disj, negate } kind = Kind::compare;
  Cmp cmp = Cmp::lt;
  ExprPtr lhs, rhs;  // compare
  CondPtr a, b;      // conj/disj use both, negate uses a
};

struct Expr {
  enum class Kind { literal, variable, negate, add, sub, mul, div, call, piecewise, gallery } kind = Kind::literal;
  Rational value;       // literal
  std::string text;     // decimal literal source, function name, or gallery ref
  bool decimal = false;
  std::size_t index = 0;  // variable: 1-based
  std::vector<ExprPtr> args;  // operands or call arguments; piecewise: then, else
  CondPtr cond;               // piecewise
  std::shared_ptr<const gallery::Fixture> fixture;
};

bool operator==(const Expr& a, const Expr& b);
bool operator==(const Cond& a, const Cond& b);

struct FunctionSpec {
  std::size_t dimension = 1;
  Brick ambient;
  ExprPtr body;
};

struct ParseOptions {
  std::optional<std::size_t> dimension;
  std::optional<Brick> ambient;
  Rational precision = precision_from_env();  // decimal literals are rounded to this grid
};

/// Infers the dimension from the highest variable index (or the gallery
/// fixture) unless given; the ambient defaults to [0,1]^n or the fixture's.
FunctionSpec parse(std::string_view text, const ParseOptions& opts = {});

ExprPtr parse_expr(std::string_view text, const ParseOptions& opts = {});

double eval(const FunctionSpec& spec, const Point& x);
double eval(const Expr& e, const Point& x);

/// Exact value when the subtree avoids transcendental functions and gallery
/// references.
std::optional<Rational> eval_exact(const Expr& e, const Point& x);

std::string print(const Expr& e);
std::string print(const Cond& c);
std::string print(const FunctionSpec& spec);

PointOracle oracle(const FunctionSpec& spec);

/// Functions known to the parser with their arity (-1: two or more).
const std::vector<std::pair<std::string, int>>& builtins();

}  // namespace brickint::dsl
