#include "brickint/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

namespace brickint {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class floor_of(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Smallest-denominator rational in (lo, hi) for 0 <= lo < hi; hi unset = +inf.
Rational simplest_nonneg(const Rational& lo, const std::optional<Rational>& hi) {
  const mpz_class fl = floor_of(lo);
  const Rational next(fl + 1);
  if (!hi || next < *hi) return next;
  const Rational a = lo - Rational(fl);
  const Rational b = *hi - Rational(fl);
  std::optional<Rational> upper;
  if (a != 0) upper = Rational(1) / a;
  Rational inner = simplest_nonneg(Rational(1) / b, upper);
  Rational out = Rational(fl) + Rational(1) / inner;
  out.canonicalize();
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw Error("empty rational literal");

  std::string body = s;
  bool negative = false;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    body.erase(body.begin());
  }

  Rational out;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw Error("malformed rational '" + s + "'");
    mpz_class d(den, 10);
    if (d == 0) throw Error("zero denominator in '" + s + "'");
    out = Rational(mpz_class(num, 10), d);
  } else {
    // decimal: digits [. digits] [e|E [+-] digits]
    std::string mantissa = body, exponent;
    if (auto e = body.find_first_of("eE"); e != std::string::npos) {
      mantissa = body.substr(0, e);
      exponent = body.substr(e + 1);
    }
    std::string ip = mantissa, fp;
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
      ip = mantissa.substr(0, dot);
      fp = mantissa.substr(dot + 1);
    }
    if (ip.empty() && fp.empty()) throw Error("malformed number '" + s + "'");
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw Error("malformed number '" + s + "'");
    long exp10 = 0;
    if (!exponent.empty()) {
      std::string ex = exponent;
      bool eneg = false;
      if (ex[0] == '-' || ex[0] == '+') {
        eneg = ex[0] == '-';
        ex.erase(ex.begin());
      }
      if (!all_digits(ex) || ex.size() > 6) throw Error("malformed exponent in '" + s + "'");
      exp10 = std::stol(ex) * (eneg ? -1 : 1);
    } else if (body.find_first_of("eE") != std::string::npos) {
      throw Error("malformed exponent in '" + s + "'");
    }
    mpz_class digits((ip.empty() ? std::string("0") : ip) + fp, 10);
    exp10 -= static_cast<long>(fp.size());
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    out = exp10 >= 0 ? Rational(digits * scale) : Rational(digits, scale);
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

std::string to_string(const Point& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ", ";
    out += to_string(x[i]);
  }
  return out + ")";
}

double to_double(const Rational& q) { return q.get_d(); }

std::vector<double> to_doubles(const Point& x) {
  std::vector<double> out;
  out.reserve(x.size());
  for (const auto& c : x) out.push_back(c.get_d());
  return out;
}

Rational from_double(double v) {
  if (!std::isfinite(v)) throw EvaluationError("non-finite value cannot become a rational");
  Rational q;
  mpq_set_d(q.get_mpq_t(), v);
  return q;
}

mpz_class round_units(double v, const Rational& precision) {
  if (precision <= 0) throw Error("rounding precision must be positive");
  Rational scaled = from_double(v) / precision;
  const mpz_class& num = scaled.get_num();
  const mpz_class& den = scaled.get_den();
  mpz_class twice = 2 * num + (num >= 0 ? den : mpz_class(-den));
  mpz_class twoden = 2 * den;
  mpz_class k;
  mpz_tdiv_q(k.get_mpz_t(), twice.get_mpz_t(), twoden.get_mpz_t());
  return k;
}

Rational round_to_grid(double v, const Rational& precision) {
  Rational out = Rational(round_units(v, precision)) * precision;
  out.canonicalize();
  return out;
}

Rational pow10_inverse(unsigned k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
  return Rational(mpz_class(1), p);
}

Rational pow2_inverse(unsigned k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
  return Rational(mpz_class(1), p);
}

const Rational& default_precision() {
  static const Rational p = pow10_inverse(12);
  return p;
}

Rational precision_from_env() {
  const char* env = std::getenv("BRICKINT_PRECISION");
  if (!env || !*env) return default_precision();
  Rational p = parse_rational(env);
  if (p <= 0) throw Error("BRICKINT_PRECISION must be positive");
  return p;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw Error("simplest_between needs lo < hi");
  if (lo < 0 && hi > 0) return Rational(0);
  if (hi <= 0) return Rational(-simplest_nonneg(Rational(-hi), Rational(-lo)));
  return simplest_nonneg(lo, hi);
}

Rational best_approximation(double v, std::int64_t max_den) {
  if (!std::isfinite(v)) throw EvaluationError("non-finite value");
  if (max_den < 1) throw Error("max_den must be >= 1");
  Rational x = from_double(v);
  // Convergents h/k of the continued fraction of x; keep the last within bound,
  // then compare with the best semiconvergent.
  mpz_class h_prev = 1, h = floor_of(x), k_prev = 0, k = 1;
  Rational rest = x - Rational(h);
  const mpz_class bound(static_cast<long>(max_den));
  while (rest != 0) {
    Rational inv = Rational(1) / rest;
    mpz_class a = floor_of(inv);
    mpz_class k_next = a * k + k_prev;
    if (k_next > bound) {
      mpz_class t = (bound - k_prev) / k;
      Rational semi(t * h + h_prev, t * k + k_prev);
      Rational conv(h, k);
      semi.canonicalize();
      conv.canonicalize();
      if (t > 0 && brickint::abs(semi - x) < brickint::abs(conv - x)) return semi;
      return conv;
    }
    mpz_class h_next = a * h + h_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    rest = inv - Rational(a);
  }
  Rational out(h, k);
  out.canonicalize();
  return out;
}

}  // namespace brickint
