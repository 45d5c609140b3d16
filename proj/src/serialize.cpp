#include "brickint/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace brickint::io {

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(j.dump(), 10));
  throw Error("expected a rational as \"p/q\" string, got " + j.dump());
}

Json to_json(const Interval& i) { return Json::array({to_json(i.lo), to_json(i.hi), i.lo_closed, i.hi_closed}); }

Interval interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4 || !j[2].is_boolean() || !j[3].is_boolean())
    throw Error("interval must be [lo, hi, lo_closed, hi_closed], got " + j.dump());
  Interval i;
  i.lo = rational_from_json(j[0]);
  i.hi = rational_from_json(j[1]);
  i.lo_closed = j[2].get<bool>();
  i.hi_closed = j[3].get<bool>();
  return i;
}

Json to_json(const Brick& b) {
  Json out = Json::array();
  for (const auto& f : b.factors) out.push_back(to_json(f));
  return out;
}

Brick brick_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error("brick must be a nonempty array of intervals");
  Brick b;
  for (const auto& f : j) b.factors.push_back(interval_from_json(f));
  validate(b);
  return b;
}

Json to_json(const StepFunction& g) {
  Json terms = Json::array();
  for (const auto& t : g.terms) terms.push_back(Json{{"coeff", to_json(t.coeff)}, {"brick", to_json(t.support)}});
  return Json{{"ambient", to_json(g.ambient)}, {"terms", terms}};
}

StepFunction step_from_json(const Json& j) {
  StepFunction g(brick_from_json(j.at("ambient")));
  for (const auto& t : j.at("terms")) g.add(rational_from_json(t.at("coeff")), brick_from_json(t.at("brick")));
  return g;
}

Json to_json(const ExceptionCover& c) {
  Json out = Json::array();
  for (const auto& b : c.bricks) out.push_back(to_json(b));
  return out;
}

ExceptionCover cover_from_json(const Json& j) {
  if (!j.is_array()) throw Error("cover must be an array of bricks");
  ExceptionCover c;
  for (const auto& b : j) c.add(brick_from_json(b));
  return c;
}

Json to_json(const NUCertificate& c) {
  Json sched = Json::array();
  for (const auto& e : c.schedule)
    sched.push_back(Json{{"delta", to_json(e.delta)},
                         {"cover", to_json(e.cover)},
                         {"tail_index", e.tail_index},
                         {"tail_sup", to_json(e.tail_sup)}});
  return Json{{"uniform_bound", to_json(c.uniform_bound)}, {"schedule", sched}};
}

NUCertificate certificate_from_json(const Json& j) {
  NUCertificate c;
  c.uniform_bound = rational_from_json(j.at("uniform_bound"));
  for (const auto& e : j.at("schedule")) {
    NUEntry entry;
    entry.delta = rational_from_json(e.at("delta"));
    entry.cover = cover_from_json(e.at("cover"));
    entry.tail_index = e.at("tail_index").get<std::size_t>();
    entry.tail_sup = rational_from_json(e.at("tail_sup"));
    c.schedule.push_back(std::move(entry));
  }
  validate(c);
  return c;
}

Json to_json(const Point& x) {
  Json out = Json::array();
  for (const auto& c : x) out.push_back(to_json(c));
  return out;
}

Point point_from_json(const Json& j) {
  Point x;
  for (const auto& c : j) x.push_back(rational_from_json(c));
  return x;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot move report into place at " + path + ": " + ec.message());
  }
}

}  // namespace brickint::io
