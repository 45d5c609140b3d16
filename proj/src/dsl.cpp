#include "brickint/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace brickint::dsl {

ParseError::ParseError(std::size_t l, std::size_t c, const std::string& what)
    : Error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + what), line(l), column(c), detail(what) {}

const std::vector<std::pair<std::string, int>>& builtins() {
  static const std::vector<std::pair<std::string, int>> b = {
      {"sin", 1}, {"cos", 1}, {"tan", 1}, {"exp", 1}, {"log", 1}, {"sqrt", 1}, {"abs", 1}, {"min", -1}, {"max", -1}};
  return b;
}

namespace {

enum class Tok { integer, rational, decimal, ident, gallery, op, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l0 = line, c0 = col, start = i;
    if (digit(c) || (c == '.' && i + 1 < s.size() && digit(s[i + 1]))) {
      std::size_t j = i;
      while (j < s.size() && digit(s[j])) ++j;
      bool dec = false;
      if (j < s.size() && s[j] == '.') {
        dec = true;
        ++j;
        while (j < s.size() && digit(s[j])) ++j;
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && digit(s[k])) {
          dec = true;
          j = k;
          while (j < s.size() && digit(s[j])) ++j;
        }
      }
      Tok kind = dec ? Tok::decimal : Tok::integer;
      // p/q with no whitespace is one exact literal, unless q is zero or the
      // literal is itself a divisor (x1/2/3 stays left-associative)
      const bool after_slash = !out.empty() && out.back().kind == Tok::op && out.back().text == "/";
      if (!dec && !after_slash && j + 1 < s.size() && s[j] == '/' && digit(s[j + 1])) {
        std::size_t k = j + 1;
        while (k < s.size() && digit(s[k])) ++k;
        bool decimal_follows = k < s.size() && (s[k] == '.' || s[k] == 'e' || s[k] == 'E');
        std::string_view den = s.substr(j + 1, k - j - 1);
        if (!decimal_follows && den.find_first_not_of('0') != std::string_view::npos) {
          kind = Tok::rational;
          j = k;
        }
      }
      out.push_back({kind, std::string(s.substr(start, j - start)), l0, c0});
      advance(j - i);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      if (s.substr(i, j - i) == "gallery" && j < s.size() && s[j] == ':') {
        ++j;
        // name: identifier parts joined by '-', then optional ?key=value&...
        std::size_t k = j;
        for (;;) {
          if (k >= s.size() || !ident_start(s[k])) break;
          while (k < s.size() && ident_char(s[k])) ++k;
          if (k + 1 < s.size() && s[k] == '-' && ident_start(s[k + 1])) {
            ++k;
            continue;
          }
          break;
        }
        if (k == j) throw ParseError(l0, c0 + (j - i), "expected a gallery fixture name");
        if (k < s.size() && s[k] == '?') {
          ++k;
          while (k < s.size() && (ident_char(s[k]) || s[k] == '=' || s[k] == '&' || s[k] == '.' || s[k] == '/' ||
                                  (s[k] == '-' && k > 0 && s[k - 1] == '=')))
            ++k;
        }
        out.push_back({Tok::gallery, std::string(s.substr(i, k - i)), l0, c0});
        advance(k - i);
        continue;
      }
      out.push_back({Tok::ident, std::string(s.substr(i, j - i)), l0, c0});
      advance(j - i);
      continue;
    }
    static const char* two[] = {"<=", ">=", "==", "!="};
    bool matched = false;
    for (const char* t : two) {
      if (s.substr(i, 2) == t) {
        out.push_back({Tok::op, t, l0, c0});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("+-*/(),<>").find(c) != std::string_view::npos) {
      out.push_back({Tok::op, std::string(1, c), l0, c0});
      advance(1);
      continue;
    }
    throw ParseError(l0, c0, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

bool keyword(const std::string& s) {
  return s == "if" || s == "then" || s == "else" || s == "and" || s == "or" || s == "not" || s == "piecewise";
}

int arity_of(const std::string& name) {
  for (const auto& [n, a] : builtins())
    if (n == name) return a;
  return 0;
}

Rational snap(const Rational& v, const Rational& precision) {
  if (precision <= 0) return v;
  Rational units = v / precision;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), units.get_num_mpz_t(), units.get_den_mpz_t());
  Rational frac = units - Rational(fl);
  // ties away from zero
  if (frac > Rational(1, 2) || (frac == Rational(1, 2) && v > 0)) fl += 1;
  Rational out = Rational(fl) * precision;
  out.canonicalize();
  return out;
}

std::shared_ptr<Expr> node(Expr::Kind k) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  return e;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& opts) : t_(std::move(toks)), opts_(opts) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (peek().kind != Tok::end) fail(peek(), "unexpected '" + peek().text + "' after expression");
    return e;
  }

  std::size_t max_var = 0;
  std::optional<Brick> fixture_ambient;

 private:
  std::vector<Token> t_;
  std::size_t p_ = 0;
  const ParseOptions& opts_;

  const Token& peek() const { return t_[p_]; }
  const Token& take() { return t_[p_++]; }
  bool is_op(const char* s) const { return peek().kind == Tok::op && peek().text == s; }
  bool is_word(const char* s) const { return peek().kind == Tok::ident && peek().text == s; }
  [[noreturn]] void fail(const Token& at, const std::string& what) const {
    throw ParseError(at.line, at.column, at.kind == Tok::end ? what + " (end of input)" : what);
  }
  void expect_op(const char* s) {
    if (!is_op(s)) fail(peek(), std::string("expected '") + s + "'");
    ++p_;
  }
  void expect_word(const char* s) {
    if (!is_word(s)) fail(peek(), std::string("expected '") + s + "'");
    ++p_;
  }

  ExprPtr expr() {
    if (is_word("if")) {
      ++p_;
      CondPtr c = cond();
      expect_word("then");
      ExprPtr a = expr();
      expect_word("else");
      ExprPtr b = expr();
      auto e = node(Expr::Kind::piecewise);
      e->cond = c;
      e->args = {a, b};
      return e;
    }
    return additive();
  }

  ExprPtr additive() {
    ExprPtr lhs = term();
    while (is_op("+") || is_op("-")) {
      auto e = node(take().text == "+" ? Expr::Kind::add : Expr::Kind::sub);
      e->args = {lhs, term()};
      lhs = e;
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (is_op("*") || is_op("/")) {
      auto e = node(take().text == "*" ? Expr::Kind::mul : Expr::Kind::div);
      e->args = {lhs, unary()};
      lhs = e;
    }
    return lhs;
  }

  ExprPtr unary() {
    if (is_op("-")) {
      ++p_;
      auto e = node(Expr::Kind::negate);
      e->args = {unary()};
      return e;
    }
    return primary();
  }

  ExprPtr primary() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::integer:
      case Tok::rational: {
        ++p_;
        auto e = node(Expr::Kind::literal);
        e->value = parse_rational(tok.text);
        return e;
      }
      case Tok::decimal: {
        ++p_;
        auto e = node(Expr::Kind::literal);
        e->decimal = true;
        e->text = tok.text;
        e->value = snap(parse_rational(tok.text), opts_.precision);
        return e;
      }
      case Tok::gallery: {
        ++p_;
        auto e = node(Expr::Kind::gallery);
        e->text = tok.text;
        try {
          e->fixture = std::make_shared<gallery::Fixture>(gallery::make_fixture(tok.text));
        } catch (const Error& err) {
          fail(tok, err.what());
        }
        const std::size_t d = e->fixture->ambient.dim();
        if (opts_.dimension && *opts_.dimension != d)
          fail(tok, "fixture " + e->fixture->name + " has dimension " + std::to_string(d));
        max_var = std::max(max_var, d);
        if (!fixture_ambient) fixture_ambient = e->fixture->ambient;
        return e;
      }
      case Tok::ident:
        return identifier();
      case Tok::op:
        if (tok.text == "(") {
          ++p_;
          ExprPtr e = expr();
          expect_op(")");
          return e;
        }
        fail(tok, "expected an expression, found '" + tok.text + "'");
      case Tok::end:
        fail(tok, "expected an expression");
    }
    fail(tok, "expected an expression");
  }

  ExprPtr identifier() {
    const Token& tok = take();
    const std::string& name = tok.text;
    if (name.size() >= 2 && name[0] == 'x' && std::all_of(name.begin() + 1, name.end(), digit)) {
      if (name[1] == '0') fail(tok, "variables are numbered from x1");
      std::size_t idx = std::stoul(name.substr(1));
      if (opts_.dimension && idx > *opts_.dimension)
        fail(tok, "variable " + name + " exceeds dimension " + std::to_string(*opts_.dimension));
      max_var = std::max(max_var, idx);
      auto e = node(Expr::Kind::variable);
      e->index = idx;
      return e;
    }
    if (name == "piecewise") {
      expect_op("(");
      CondPtr c = cond();
      expect_op(",");
      ExprPtr a = expr();
      expect_op(",");
      ExprPtr b = expr();
      expect_op(")");
      auto e = node(Expr::Kind::piecewise);
      e->cond = c;
      e->args = {a, b};
      return e;
    }
    if (keyword(name)) fail(tok, "unexpected keyword '" + name + "'");
    int arity = arity_of(name);
    if (arity == 0) fail(tok, "unknown identifier '" + name + "'");
    if (!is_op("(")) fail(peek(), "expected '(' after " + name);
    ++p_;
    auto e = node(Expr::Kind::call);
    e->text = name;
    if (!is_op(")")) {
      e->args.push_back(expr());
      while (is_op(",")) {
        ++p_;
        e->args.push_back(expr());
      }
    }
    expect_op(")");
    const std::size_t n = e->args.size();
    if ((arity > 0 && n != static_cast<std::size_t>(arity)) || (arity < 0 && n < 2))
      fail(tok, name + " takes " + (arity > 0 ? std::to_string(arity) : std::string("at least 2")) + " argument" +
                    (arity == 1 ? "" : "s") + ", got " + std::to_string(n));
    return e;
  }

  CondPtr cond() {
    CondPtr lhs = conj();
    while (is_word("or")) {
      ++p_;
      auto c = std::make_shared<Cond>();
      c->kind = Cond::Kind::disj;
      c->a = lhs;
      c->b = conj();
      lhs = c;
    }
    return lhs;
  }

  CondPtr conj() {
    CondPtr lhs = negation();
    while (is_word("and")) {
      ++p_;
      auto c = std::make_shared<Cond>();
      c->kind = Cond::Kind::conj;
      c->a = lhs;
      c->b = negation();
      lhs = c;
    }
    return lhs;
  }

  CondPtr negation() {
    if (is_word("not")) {
      ++p_;
      auto c = std::make_shared<Cond>();
      c->kind = Cond::Kind::negate;
      c->a = negation();
      return c;
    }
    if (is_op("(")) {
      // a parenthesized condition, or a comparison whose left side starts with '('
      const std::size_t save = p_;
      try {
        ++p_;
        CondPtr c = cond();
        expect_op(")");
        if (!comparison_op()) return c;
      } catch (const ParseError&) {
      }
      p_ = save;
    }
    return comparison();
  }

  bool comparison_op() const {
    return peek().kind == Tok::op &&
           (peek().text == "<" || peek().text == "<=" || peek().text == ">" || peek().text == ">=" ||
            peek().text == "==" || peek().text == "!=");
  }

  CondPtr comparison() {
    auto c = std::make_shared<Cond>();
    c->lhs = additive();
    if (!comparison_op()) fail(peek(), "expected a comparison operator");
    const std::string op = take().text;
    c->cmp = op == "<" ? Cmp::lt : op == "<=" ? Cmp::le : op == ">" ? Cmp::gt : op == ">=" ? Cmp::ge : op == "==" ? Cmp::eq : Cmp::ne;
    c->rhs = additive();
    return c;
  }
};

struct Value {
  double d = 0;
  std::optional<Rational> q;
};

Value exact(Rational v) {
  Value out;
  out.d = v.get_d();
  out.q = std::move(v);
  return out;
}

double finite(double v, const char* what) {
  if (!std::isfinite(v)) throw EvaluationError(std::string(what) + " produced a non-finite value");
  return v;
}

Value evaluate(const Expr& e, const Point& x);

bool test(const Cond& c, const Point& x) {
  switch (c.kind) {
    case Cond::Kind::conj:
      return test(*c.a, x) && test(*c.b, x);
    case Cond::Kind::disj:
      return test(*c.a, x) || test(*c.b, x);
    case Cond::Kind::negate:
      return !test(*c.a, x);
    case Cond::Kind::compare:
      break;
  }
  Value l = evaluate(*c.lhs, x), r = evaluate(*c.rhs, x);
  int s;
  if (l.q && r.q) {
    s = cmp(*l.q, *r.q);
  } else {
    s = l.d < r.d ? -1 : l.d > r.d ? 1 : 0;
  }
  switch (c.cmp) {
    case Cmp::lt: return s < 0;
    case Cmp::le: return s <= 0;
    case Cmp::gt: return s > 0;
    case Cmp::ge: return s >= 0;
    case Cmp::eq: return s == 0;
    case Cmp::ne: return s != 0;
  }
  return false;
}

Value call(const std::string& f, const std::vector<Value>& a) {
  if (f == "abs") return a[0].q ? exact(abs(*a[0].q)) : Value{std::abs(a[0].d), {}};
  if (f == "min" || f == "max") {
    const bool all_exact = std::all_of(a.begin(), a.end(), [](const Value& v) { return v.q.has_value(); });
    std::size_t best = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
      bool better = all_exact ? (f == "min" ? *a[i].q < *a[best].q : *a[i].q > *a[best].q)
                              : (f == "min" ? a[i].d < a[best].d : a[i].d > a[best].d);
      if (better) best = i;
    }
    return all_exact ? a[best] : Value{a[best].d, {}};
  }
  const double v = a[0].d;
  if (f == "sqrt") {
    if (a[0].q ? *a[0].q < 0 : v < 0) throw EvaluationError("sqrt of a negative number");
    return {std::sqrt(v), {}};
  }
  if (f == "log") {
    if (a[0].q ? *a[0].q <= 0 : v <= 0) throw EvaluationError("log of a non-positive number");
    return {std::log(v), {}};
  }
  if (f == "sin") return {std::sin(v), {}};
  if (f == "cos") return {std::cos(v), {}};
  if (f == "tan") return {finite(std::tan(v), "tan"), {}};
  if (f == "exp") return {finite(std::exp(v), "exp"), {}};
  throw EvaluationError("unknown function " + f);
}

Value evaluate(const Expr& e, const Point& x) {
  switch (e.kind) {
    case Expr::Kind::literal:
      return exact(e.value);
    case Expr::Kind::variable:
      if (e.index > x.size()) throw EvaluationError("point has no coordinate x" + std::to_string(e.index));
      return exact(x[e.index - 1]);
    case Expr::Kind::gallery:
      if (x.size() != e.fixture->ambient.dim()) throw EvaluationError("point dimension does not match " + e.fixture->name);
      return {e.fixture->eval(x), {}};
    case Expr::Kind::negate: {
      Value v = evaluate(*e.args[0], x);
      return v.q ? exact(-*v.q) : Value{-v.d, {}};
    }
    case Expr::Kind::piecewise:
      return evaluate(*e.args[test(*e.cond, x) ? 0 : 1], x);
    case Expr::Kind::call: {
      std::vector<Value> a;
      for (const auto& arg : e.args) a.push_back(evaluate(*arg, x));
      return call(e.text, a);
    }
    default:
      break;
  }
  Value l = evaluate(*e.args[0], x), r = evaluate(*e.args[1], x);
  if (e.kind == Expr::Kind::div && (r.q ? *r.q == 0 : r.d == 0)) throw EvaluationError("division by zero");
  if (l.q && r.q) {
    switch (e.kind) {
      case Expr::Kind::add: return exact(*l.q + *r.q);
      case Expr::Kind::sub: return exact(*l.q - *r.q);
      case Expr::Kind::mul: return exact(*l.q * *r.q);
      default: return exact(*l.q / *r.q);
    }
  }
  switch (e.kind) {
    case Expr::Kind::add: return {finite(l.d + r.d, "+"), {}};
    case Expr::Kind::sub: return {finite(l.d - r.d, "-"), {}};
    case Expr::Kind::mul: return {finite(l.d * r.d, "*"), {}};
    default: return {finite(l.d / r.d, "/"), {}};
  }
}

// precedence: piecewise 0, additive 1, multiplicative 2, unary 3, atoms 4
int prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::piecewise: return 0;
    case Expr::Kind::add:
    case Expr::Kind::sub: return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div: return 2;
    case Expr::Kind::negate: return 3;
    default: return 4;
  }
}

void put(std::ostream& os, const Expr& e);
void put(std::ostream& os, const Cond& c);

void put_child(std::ostream& os, const Expr& child, int min_prec) {
  if (prec(child) < min_prec) {
    os << '(';
    put(os, child);
    os << ')';
  } else {
    put(os, child);
  }
}

void put(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::literal:
      os << (e.decimal ? e.text : to_string(e.value));
      return;
    case Expr::Kind::variable:
      os << 'x' << e.index;
      return;
    case Expr::Kind::gallery:
      os << e.text;
      return;
    case Expr::Kind::negate:
      os << '-';
      put_child(os, *e.args[0], 4);
      return;
    case Expr::Kind::call:
      os << e.text << '(';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) os << ", ";
        put(os, *e.args[i]);
      }
      os << ')';
      return;
    case Expr::Kind::piecewise:
      os << "if ";
      put(os, *e.cond);
      os << " then ";
      put(os, *e.args[0]);
      os << " else ";
      put(os, *e.args[1]);
      return;
    default:
      break;
  }
  const int p = prec(e);
  const char* op = e.kind == Expr::Kind::add ? " + " : e.kind == Expr::Kind::sub ? " - " : e.kind == Expr::Kind::mul ? " * " : " / ";
  put_child(os, *e.args[0], p);
  os << op;
  const Expr& rhs = *e.args[1];
  if (e.kind == Expr::Kind::div && rhs.kind == Expr::Kind::literal && !rhs.decimal && rhs.value.get_den() != 1) {
    os << '(';
    put(os, rhs);
    os << ')';
  } else {
    put_child(os, rhs, p + 1);
  }
}

int cprec(const Cond& c) {
  switch (c.kind) {
    case Cond::Kind::disj: return 0;
    case Cond::Kind::conj: return 1;
    default: return 2;
  }
}

void put_cond_child(std::ostream& os, const Cond& c, int min_prec) {
  if (cprec(c) < min_prec) {
    os << '(';
    put(os, c);
    os << ')';
  } else {
    put(os, c);
  }
}

void put(std::ostream& os, const Cond& c) {
  switch (c.kind) {
    case Cond::Kind::disj:
      put_cond_child(os, *c.a, 0);
      os << " or ";
      put_cond_child(os, *c.b, 1);
      return;
    case Cond::Kind::conj:
      put_cond_child(os, *c.a, 1);
      os << " and ";
      put_cond_child(os, *c.b, 2);
      return;
    case Cond::Kind::negate:
      os << "not ";
      put_cond_child(os, *c.a, 2);
      return;
    case Cond::Kind::compare:
      break;
  }
  static const char* ops[] = {" < ", " <= ", " > ", " >= ", " == ", " != "};
  // comparison operands are additive expressions; piecewise needs parentheses
  put_child(os, *c.lhs, 1);
  os << ops[static_cast<int>(c.cmp)];
  put_child(os, *c.rhs, 1);
}

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case Expr::Kind::literal:
      if (a.decimal != b.decimal || a.value != b.value || (a.decimal && a.text != b.text)) return false;
      break;
    case Expr::Kind::variable:
      if (a.index != b.index) return false;
      break;
    case Expr::Kind::call:
    case Expr::Kind::gallery:
      if (a.text != b.text) return false;
      break;
    case Expr::Kind::piecewise:
      if (!(*a.cond == *b.cond)) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!(*a.args[i] == *b.args[i])) return false;
  return true;
}

bool operator==(const Cond& a, const Cond& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Cond::Kind::compare:
      return a.cmp == b.cmp && *a.lhs == *b.lhs && *a.rhs == *b.rhs;
    case Cond::Kind::negate:
      return *a.a == *b.a;
    default:
      return *a.a == *b.a && *a.b == *b.b;
  }
}

ExprPtr parse_expr(std::string_view text, const ParseOptions& opts) {
  Parser p(lex(text), opts);
  return p.parse_all();
}

FunctionSpec parse(std::string_view text, const ParseOptions& opts) {
  Parser p(lex(text), opts);
  FunctionSpec spec;
  spec.body = p.parse_all();
  spec.dimension = opts.dimension ? *opts.dimension : std::max<std::size_t>(1, p.max_var);
  if (opts.ambient) {
    if (opts.ambient->dim() != spec.dimension)
      throw Error("ambient has dimension " + std::to_string(opts.ambient->dim()) + ", expression needs " +
                  std::to_string(spec.dimension));
    spec.ambient = *opts.ambient;
  } else if (p.fixture_ambient && p.fixture_ambient->dim() == spec.dimension) {
    spec.ambient = *p.fixture_ambient;
  } else {
    spec.ambient = unit_cube(spec.dimension);
  }
  return spec;
}

double eval(const Expr& e, const Point& x) { return evaluate(e, x).d; }

double eval(const FunctionSpec& spec, const Point& x) {
  if (x.size() != spec.dimension)
    throw Error("point has dimension " + std::to_string(x.size()) + ", spec has " + std::to_string(spec.dimension));
  return evaluate(*spec.body, x).d;
}

std::optional<Rational> eval_exact(const Expr& e, const Point& x) { return evaluate(e, x).q; }

std::string print(const Expr& e) {
  std::ostringstream os;
  put(os, e);
  return os.str();
}

std::string print(const Cond& c) {
  std::ostringstream os;
  put(os, c);
  return os.str();
}

std::string print(const FunctionSpec& spec) { return print(*spec.body); }

PointOracle oracle(const FunctionSpec& spec) {
  return [spec](const Point& x) { return eval(spec, x); };
}

}  // namespace brickint::dsl
