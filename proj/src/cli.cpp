#include "brickint/cli.hpp"

#include <charconv>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "brickint/convergence.hpp"
#include "brickint/directional.hpp"
#include "brickint/dsl.hpp"
#include "brickint/gallery.hpp"
#include "brickint/gauge.hpp"
#include "brickint/indefinite.hpp"
#include "brickint/integrator.hpp"
#include "brickint/jordan.hpp"
#include "brickint/serialize.hpp"

namespace brickint::cli {

using io::Json;
using io::to_json;

std::string report_schema_version() { return "1.0.0"; }

namespace {

struct Config {
  std::string command;
  std::string spec, ambient, tol, m, depth, radii, out, point, cert, gauge;
  std::string format = "json";
  std::uint64_t seed = 1;
  unsigned trials = 20;
  unsigned depth_limit = 16;
  std::size_t dimension = 0;
  bool serial = false;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Outcome {
  Json result;
  Table table;
  int code = ok;
};

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string dec(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string dec(const Rational& q) { return dec(q.get_d()); }

std::vector<unsigned> unsigned_list(const std::string& s, const char* what) {
  std::vector<unsigned> out;
  for (const auto& item : split(s)) {
    Rational v = parse_rational(item);
    if (v.get_den() != 1 || v <= 0) throw Error(std::string(what) + " entries must be positive integers, got " + item);
    out.push_back(static_cast<unsigned>(v.get_num().get_ui()));
  }
  if (out.empty()) throw Error(std::string(what) + " must not be empty");
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw Error(std::string(what) + " must be strictly increasing");
  return out;
}

std::vector<Rational> radii_list(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& item : split(s)) out.push_back(parse_rational(item));
  if (out.empty()) throw Error("--radii must not be empty");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] <= 0) throw Error("--radii entries must be positive");
    if (i > 0 && out[i] >= out[i - 1]) throw Error("--radii must be strictly decreasing");
  }
  return out;
}

Point point_arg(const std::string& s) {
  Point x;
  for (const auto& item : split(s)) x.push_back(parse_rational(item));
  if (x.empty()) throw Error("--point must not be empty");
  return x;
}

Rational tol_arg(const Config& c, const Rational& fallback) {
  if (c.tol.empty()) return fallback;
  Rational t = parse_rational(c.tol);
  if (t <= 0) throw Error("--tol must be positive");
  return t;
}

Exec exec_of(const Config& c) { return c.serial ? Exec::serial : Exec::parallel; }

struct Loaded {
  IntegrandSpec f;
  std::string text;  // printed expression or fixture reference
};

Loaded load(const Config& c) {
  if (c.spec.empty()) throw Error("--spec is required");
  std::optional<Brick> ambient;
  if (!c.ambient.empty()) ambient = parse_ambient(c.ambient);

  if (c.spec.rfind("gallery:", 0) == 0) {
    gallery::Fixture fx = gallery::make_fixture(c.spec);
    Loaded l;
    l.f.ambient = fx.ambient;
    if (ambient) {
      if (ambient->dim() != fx.ambient.dim()) throw Error("--ambient dimension does not match " + fx.name);
      l.f.ambient = *ambient;
    }
    l.f.eval = fx.eval;
    l.f.support = fx.support;
    l.f.claimed_bound = fx.bound;
    l.text = c.spec;
    return l;
  }

  std::string text = c.spec;
  dsl::ParseOptions po;
  if (c.dimension) po.dimension = c.dimension;
  const bool is_file = c.spec.size() > 5 && c.spec.substr(c.spec.size() - 5) == ".json" && std::filesystem::exists(c.spec);
  if (is_file) {
    Json j = Json::parse(io::read_file(c.spec));
    text = j.at("expr").get<std::string>();
    if (j.contains("dimension")) po.dimension = j.at("dimension").get<std::size_t>();
    if (j.contains("ambient") && !ambient)
      ambient = j.at("ambient").is_string() ? parse_ambient(j.at("ambient").get<std::string>()) : io::brick_from_json(j.at("ambient"));
  }
  if (ambient) {
    po.ambient = ambient;
    if (!po.dimension) po.dimension = ambient->dim();
  }
  dsl::FunctionSpec spec = dsl::parse(text, po);
  Loaded l;
  l.f.ambient = spec.ambient;
  l.f.eval = dsl::oracle(spec);
  l.text = dsl::print(spec);
  return l;
}

Json rows_json(const std::vector<RadiusRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back(Json{{"radius", to_json(r.radius)}, {"mean", r.mean}, {"min", r.min}, {"max", r.max}, {"count", r.count}});
  return out;
}

LimitConfig limit_config(const Config& c) {
  LimitConfig cfg = default_limit_config();
  if (!c.radii.empty()) cfg.radii = radii_list(c.radii);
  if (!c.tol.empty()) cfg.tol = tol_arg(c, 1).get_d();
  cfg.seed = c.seed;
  return cfg;
}

DerivOptions deriv_options(const Config& c) {
  DerivOptions o = default_deriv_options();
  if (!c.radii.empty()) o.radii = radii_list(c.radii);
  if (!c.tol.empty()) o.tol = tol_arg(c, 1).get_d();
  o.seed = c.seed;
  return o;
}

Outcome cmd_integrate(const Config& c, Json& prov) {
  Loaded l = load(c);
  IntegrateOptions o;
  o.tol = tol_arg(c, Rational(1, 1000));
  if (!c.m.empty()) o.schedule = unsigned_list(c.m, "--m");
  o.exec = exec_of(c);
  prov["tol"] = to_json(o.tol);
  prov["schedule"] = o.schedule;
  IntegrateResult r = k_integrate(l.f, o);

  Outcome out;
  Json hist = Json::array();
  out.table.header = {"m", "value", "bound", "cover_volume"};
  for (const auto& s : r.history) {
    hist.push_back(Json{{"m", s.m},
                        {"value", to_json(s.value)},
                        {"value_decimal", s.value.get_d()},
                        {"bound", to_json(s.bound)},
                        {"cover_volume", to_json(s.cover_volume)}});
    out.table.rows.push_back({std::to_string(s.m), dec(s.value), dec(s.bound), dec(s.cover_volume)});
  }
  out.result = Json{{"method", "k_integrate"},
                    {"value", to_json(r.value)},
                    {"value_decimal", r.value.get_d()},
                    {"error_bound", to_json(r.error_bound)},
                    {"error_bound_decimal", r.error_bound.get_d()},
                    {"m", r.m},
                    {"reached", r.reached},
                    {"terms_used", r.terms_used},
                    {"range", Json::array({r.range_lo, r.range_hi})},
                    {"uniform_bound", to_json(r.bound_used)},
                    {"schedule_m", o.schedule},
                    {"history", hist},
                    {"certificate", to_json(r.certificate)}};
  out.code = r.reached ? ok : tolerance_not_reached;
  return out;
}

Outcome cmd_fubini(const Config& c, Json& prov) {
  Loaded l = load(c);
  unsigned m = 512;
  if (!c.m.empty()) m = unsigned_list(c.m, "--m").back();
  prov["m"] = m;
  Outcome out;
  if (!c.point.empty()) {
    Point prefix = point_arg(c.point);
    if (prefix.size() >= l.f.ambient.dim()) throw Error("--point must fix fewer coordinates than the dimension");
    Rational v = inner_integral(l.f, prefix, m);
    out.result = Json{{"method", "inner midpoint"}, {"prefix", to_json(prefix)}, {"value", to_json(v)}, {"value_decimal", v.get_d()}, {"m", m}};
    out.table = {{"prefix", "m", "value"}, {{to_string(prefix), std::to_string(m), dec(v)}}};
    return out;
  }
  Rational v = fubini(l.f, m);
  out.result = Json{{"method", "iterated midpoint"}, {"value", to_json(v)}, {"value_decimal", v.get_d()}, {"m", m}};
  out.table = {{"m", "value"}, {{std::to_string(m), dec(v)}}};
  return out;
}

Outcome cmd_classify(const Config& c, Json& prov) {
  Loaded l = load(c);
  LimitConfig cfg = limit_config(c);
  prov["radii"] = Json::array();
  for (const auto& r : cfg.radii) prov["radii"].push_back(to_json(r));
  prov["limit_tol"] = cfg.tol;
  Outcome out;
  if (!c.point.empty()) {
    Point x = point_arg(c.point);
    Classification k = classify(l.f.eval, l.f.ambient, x, cfg);
    Json dirs = Json::array();
    out.table.header = {"direction", "exists", "value", "oscillation", "error"};
    for (const auto& [a, est] : k.per_direction) {
      dirs.push_back(Json{{"direction", format_direction(a)},
                          {"exists", est.exists},
                          {"value", est.value},
                          {"oscillation", est.oscillation},
                          {"error", est.error},
                          {"rows", rows_json(est.rows)}});
      out.table.rows.push_back({format_direction(a), est.exists ? "true" : "false", dec(est.value), dec(est.oscillation), est.error});
    }
    out.result = Json{{"point", to_json(x)},
                      {"kind", to_string(k.kind)},
                      {"f_x", k.fx ? Json(*k.fx) : Json(nullptr)},
                      {"per_direction", dirs}};
    return out;
  }
  std::vector<unsigned> depths = c.depth.empty() ? std::vector<unsigned>{4, 6, 8} : unsigned_list(c.depth, "--depth");
  prov["depths"] = depths;
  DecisionReport rep = decide_k_integrability(l.f.eval, l.f.ambient, depths, l.f.claimed_bound, cfg, std::nullopt, exec_of(c));
  Json rows = Json::array();
  out.table.header = {"depth", "dis2_volume", "unbounded_volume"};
  for (const auto& r : rep.rows) {
    rows.push_back(Json{{"depth", r.depth}, {"dis2_volume", to_json(r.dis2_volume)}, {"unbounded_volume", to_json(r.unbounded_volume)}});
    out.table.rows.push_back({std::to_string(r.depth), dec(r.dis2_volume), dec(r.unbounded_volume)});
  }
  out.result = Json{{"verdict", to_string(rep.verdict)}, {"floor", to_json(rep.floor)}, {"rows", rows}};
  out.code = rep.verdict == IntegrabilityVerdict::not_integrable_evidence ? negative_verdict : ok;
  return out;
}

Outcome cmd_jordan(const Config& c, Json& prov) {
  Loaded l = load(c);
  std::vector<unsigned> depths = c.depth.empty() ? std::vector<unsigned>{2, 4, 6, 8} : unsigned_list(c.depth, "--depth");
  prov["depths"] = depths;
  PointOracle f = l.f.eval;
  PointPredicate member = [f](const Point& x) { return f(x) != 0; };
  Outcome out;
  Json rows = Json::array();
  out.table.header = {"depth", "inner", "outer"};
  for (unsigned d : depths) {
    ContentBounds b = content_bounds(member, l.f.ambient, d, exec_of(c));
    rows.push_back(Json{{"depth", d}, {"inner", to_json(b.inner)}, {"outer", to_json(b.outer)}, {"gap", to_json(b.gap())}});
    out.table.rows.push_back({std::to_string(d), dec(b.inner), dec(b.outer)});
  }
  out.result = Json{{"set", "{x : f(x) != 0}"}, {"rows", rows}};
  return out;
}

Outcome cmd_partition(const Config& c, Json& prov) {
  if (c.gauge.empty()) throw Error("--gauge is required");
  Brick t = c.ambient.empty() ? unit_cube(1) : parse_ambient(c.ambient);
  dsl::ParseOptions po;
  po.dimension = t.dim();
  po.ambient = t;
  dsl::FunctionSpec g = dsl::parse(c.gauge, po);
  Gauge gauge = dsl::oracle(g);
  prov["gauge"] = dsl::print(g);
  prov["depth_limit"] = c.depth_limit;
  DottedPartition p = cousin_partition(gauge, t, c.depth_limit);
  FineVerdict v = verify_fine(p, gauge, t);

  Outcome out;
  const std::size_t n = t.dim();
  for (std::size_t k = 1; k <= n; ++k) {
    out.table.header.push_back("lo" + std::to_string(k));
    out.table.header.push_back("hi" + std::to_string(k));
  }
  for (std::size_t k = 1; k <= n; ++k) out.table.header.push_back("tag" + std::to_string(k));
  out.table.header.push_back("gauge_at_tag");
  Json cells = Json::array();
  for (const auto& tc : p) {
    std::vector<std::string> row;
    for (std::size_t k = 0; k < n; ++k) {
      row.push_back(to_string(tc.cell[k].lo));
      row.push_back(to_string(tc.cell[k].hi));
    }
    for (const auto& x : tc.tag) row.push_back(to_string(x));
    const double gv = gauge(tc.tag);
    row.push_back(dec(gv));
    out.table.rows.push_back(std::move(row));
    cells.push_back(Json{{"cell", to_json(tc.cell)}, {"tag", to_json(tc.tag)}, {"gauge", gv}});
  }
  out.result = Json{{"cells", cells}, {"count", p.size()}, {"fine", v.pass}, {"reason", v.reason}};
  out.code = v.pass ? ok : failure;
  return out;
}

Outcome cmd_reconstruct(const Config& c, Json& prov) {
  Loaded l = load(c);
  if (c.point.empty()) throw Error("--point is required");
  Point x = point_arg(c.point);
  DerivOptions o = deriv_options(c);
  prov["radii"] = Json::array();
  for (const auto& r : o.radii) prov["radii"].push_back(to_json(r));
  IndefiniteIntegral p = make_psi(l.f);
  Reconstruction r = reconstruct(p, x, o);
  Outcome out;
  Json rows = Json::array();
  out.table.header = {"radius", "sup_ratio"};
  for (const auto& [radius, sup] : r.sup_by_radius) {
    rows.push_back(Json{{"radius", to_json(radius)}, {"sup_ratio", sup}});
    out.table.rows.push_back({to_string(radius), dec(sup)});
  }
  Json fx = nullptr;
  try {
    fx = l.f.eval(x);
  } catch (const EvaluationError&) {
  }
  out.result = Json{{"point", to_json(x)}, {"converged", r.converged}, {"value", r.value}, {"f_x", fx}, {"note", r.note}, {"rows", rows}};
  out.code = r.converged ? ok : negative_verdict;
  return out;
}

Outcome cmd_check_psi(const Config& c, Json& prov) {
  Loaded l = load(c);
  DerivOptions o = deriv_options(c);
  prov["trials"] = c.trials;
  IndefiniteIntegral p = make_psi(l.f);
  PsiCheckReport r = check_theorem54(p, c.trials, o);
  Outcome out;
  Json unstable = Json::array();
  for (const auto& x : r.unstable_points) unstable.push_back(to_json(x));
  Json dir_unstable = Json::array();
  for (const auto& x : r.directional_unstable_points) dir_unstable.push_back(to_json(x));
  out.result = Json{{"lipschitz_L", r.lipschitz_L},
                    {"additivity_max_residual", r.additivity_max_residual},
                    {"additivity_max_allowed", r.additivity_max_allowed},
                    {"additive_within_bounds", r.additive_within_bounds},
                    {"points", r.points},
                    {"derivative_coverage", r.derivative_coverage},
                    {"directional_coverage", r.directional_coverage},
                    {"unstable_points", unstable},
                    {"unstable_cover", to_json(r.unstable_cover)},
                    {"unstable_cover_volume", to_json(r.unstable_cover.total_volume)},
                    {"directional_unstable_points", dir_unstable}};
  out.table = {{"lipschitz_L", "additivity_max_residual", "additive_within_bounds", "derivative_coverage", "directional_coverage"},
               {{dec(r.lipschitz_L), dec(r.additivity_max_residual), r.additive_within_bounds ? "true" : "false",
                 dec(r.derivative_coverage), dec(r.directional_coverage)}}};
  out.code = r.additive_within_bounds ? ok : negative_verdict;
  return out;
}

Outcome cmd_gallery(const Config& c, Json&) {
  Outcome out;
  out.table.header = {"name", "dimension", "ambient", "description"};
  std::vector<std::string> refs = c.spec.empty() ? gallery::fixture_names() : std::vector<std::string>{c.spec};
  Json list = Json::array();
  for (const auto& ref : refs) {
    gallery::Fixture fx = gallery::make_fixture(ref);
    Json params = Json::object();
    for (const auto& [k, v] : fx.params) params[k] = v;
    Json item{{"name", fx.name}, {"dimension", fx.ambient.dim()}, {"ambient", format_brick(fx.ambient)}, {"params", params},
              {"bound", fx.bound ? to_json(*fx.bound) : Json(nullptr)}, {"description", fx.description}};
    if (!c.point.empty()) {
      Point x = point_arg(c.point);
      item["point"] = to_json(x);
      item["value"] = fx.eval(x);
    }
    list.push_back(item);
    out.table.rows.push_back({fx.name, std::to_string(fx.ambient.dim()), format_brick(fx.ambient), fx.description});
  }
  out.result = Json{{"fixtures", list}};
  return out;
}

Outcome cmd_verify(const Config& c, Json& prov) {
  if (c.cert.empty()) throw Error("--cert is required");
  Json file = Json::parse(io::read_file(c.cert));
  // an integrate report nests everything under "result"
  const Json& body = file.contains("result") ? file.at("result") : file;
  NUCertificate cert = io::certificate_from_json(body.at("certificate"));

  StepSequence seq;
  VerifyOptions vo;
  vo.seed = c.seed;
  std::optional<Loaded> spec;
  if (!c.spec.empty()) {
    spec = load(c);
  } else if (file.contains("provenance") && file["provenance"].contains("spec")) {
    Config inner = c;
    inner.spec = file["provenance"]["spec"].get<std::string>();
    if (file["provenance"].contains("ambient")) inner.ambient = file["provenance"]["ambient"].get<std::string>();
    spec = load(inner);
  }
  if (body.contains("sequence")) {
    auto steps = std::make_shared<std::vector<StepFunction>>();
    for (const auto& g : body.at("sequence")) steps->push_back(io::step_from_json(g));
    vo.last_index = steps->size();
    seq = [steps](std::size_t m) { return steps->at(m - 1); };
  } else if (body.contains("schedule_m")) {
    if (!spec) throw Error("a sampled sequence needs --spec");
    auto sched = body.at("schedule_m").get<std::vector<unsigned>>();
    const std::size_t used = body.contains("terms_used") ? body.at("terms_used").get<std::size_t>() : sched.size();
    vo.last_index = std::min(used, sched.size());
    IntegrandSpec f = spec->f;
    seq = [f, sched](std::size_t m) { return sample_step(f, sched.at(m - 1)); };
  } else {
    throw Error("certificate file has neither \"sequence\" nor \"schedule_m\"");
  }
  Target target = body.contains("target") ? Target(io::step_from_json(body.at("target")))
                  : spec                  ? Target(spec->f.eval)
                                          : throw Error("no target: give --spec or a \"target\" step function");
  prov["cert"] = c.cert;
  NUVerdict v = verify_nu(seq, target, cert, vo);
  Outcome out;
  out.result = Json{{"pass", v.pass},
                    {"failed_entry", v.failed_entry ? Json(*v.failed_entry) : Json(nullptr)},
                    {"failed_index", v.failed_index ? Json(*v.failed_index) : Json(nullptr)},
                    {"reason", v.reason}};
  out.table = {{"pass", "failed_entry", "failed_index", "reason"},
               {{v.pass ? "true" : "false", v.failed_entry ? std::to_string(*v.failed_entry) : "",
                 v.failed_index ? std::to_string(*v.failed_index) : "", v.reason}}};
  out.code = v.pass ? ok : negative_verdict;
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string render_csv(const Table& t) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return os.str();
}

Json modules() {
  Json m = Json::object();
  for (const char* name : {"geometry", "stepfn", "jordan", "convergence", "integrator", "gauge", "directional", "indefinite",
                           "gallery", "dsl", "cli"})
    m[name] = "1.0.0";
  return m;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"brickint: exact K-integrals of functions on bricks", "brickint"};
  app.require_subcommand(1);
  Config c;

  using Handler = Outcome (*)(const Config&, Json&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* about, Handler h) {
    CLI::App* sc = app.add_subcommand(name, about);
    sc->add_option("--out", c.out, "write the report here (atomically) instead of stdout");
    sc->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sc->add_option("--seed", c.seed, "seed for all randomized probing");
    commands.emplace_back(sc, h);
    return sc;
  };
  auto spec_opts = [&](CLI::App* sc) {
    sc->add_option("--spec", c.spec, "expression, spec.json, or gallery:name?k=v");
    sc->add_option("--ambient", c.ambient, "e.g. [0,1]x[0,1] or [0,1]^2");
    sc->add_option("--dimension", c.dimension, "dimension of an expression spec");
    sc->add_flag("--serial", c.serial, "run kernels without OpenMP");
  };

  auto* integrate = add("integrate", "K-integral by the midpoint step sequence", cmd_integrate);
  spec_opts(integrate);
  integrate->add_option("--tol", c.tol, "target error bound (default 1e-3)");
  integrate->add_option("--m", c.m, "schedule, e.g. 8,16,32");

  auto* fub = add("fubini", "iterated midpoint integral", cmd_fubini);
  spec_opts(fub);
  fub->add_option("--m", c.m, "cells per axis (default 512)");
  fub->add_option("--point", c.point, "fix the leading coordinates and integrate the rest");

  auto* cls = add("classify", "classify a point, or decide K-integrability", cmd_classify);
  spec_opts(cls);
  cls->add_option("--point", c.point, "point to classify, e.g. 1/2,1/2");
  cls->add_option("--depth", c.depth, "dyadic depths for the decision (default 4,6,8)");
  cls->add_option("--radii", c.radii, "strictly decreasing radii");
  cls->add_option("--tol", c.tol, "limit tolerance");

  auto* jor = add("jordan", "inner and outer content of {f != 0}", cmd_jordan);
  spec_opts(jor);
  jor->add_option("--depth", c.depth, "dyadic depths (default 2,4,6,8)");

  auto* part = add("partition", "Cousin partition for a gauge", cmd_partition);
  part->add_option("--gauge", c.gauge, "gauge expression in x1..xn");
  part->add_option("--ambient", c.ambient, "brick to partition (default [0,1])");
  part->add_option("--depth-limit", c.depth_limit, "maximum bisection depth");

  auto* rec = add("reconstruct", "recover f(x) from the indefinite integral", cmd_reconstruct);
  spec_opts(rec);
  rec->add_option("--point", c.point, "interior point");
  rec->add_option("--radii", c.radii, "strictly decreasing radii");
  rec->add_option("--tol", c.tol, "stability tolerance");

  auto* chk = add("check-psi", "Lipschitz, additivity and derivative checks on Psi", cmd_check_psi);
  spec_opts(chk);
  chk->add_option("--trials", c.trials, "random bricks and splits");
  chk->add_option("--radii", c.radii, "strictly decreasing radii");
  chk->add_option("--tol", c.tol, "stability tolerance");

  auto* gal = add("gallery", "list fixtures or evaluate one", cmd_gallery);
  gal->add_option("--spec", c.spec, "gallery:name?k=v");
  gal->add_option("--point", c.point, "evaluate at this point");

  auto* ver = add("verify", "check a nearly-uniform-convergence certificate", cmd_verify);
  ver->add_option("--cert", c.cert, "certificate JSON or integrate report");
  ver->add_option("--spec", c.spec, "target function");
  ver->add_option("--ambient", c.ambient, "ambient for an expression spec");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : failure;
  }

  try {
    Handler handler = nullptr;
    for (const auto& [sc, h] : commands)
      if (sc->parsed()) {
        handler = h;
        c.command = sc->get_name();
      }
    Json prov{{"spec", c.spec}, {"ambient", c.ambient}, {"seed", c.seed}, {"precision", to_string(precision_from_env())}};
    Outcome o = handler(c, prov);
    prov["modules"] = modules();
    Json report{{"schema_version", report_schema_version()},
                {"tool", "brickint"},
                {"command", c.command},
                {"exit_code", o.code},
                {"provenance", prov},
                {"result", o.result}};
    const std::string text = c.format == "csv" ? render_csv(o.table) : report.dump(2) + "\n";
    if (c.out.empty())
      out << text;
    else
      io::write_atomic(c.out, text);
    return o.code;
  } catch (const dsl::ParseError& e) {
    err << "brickint: parse error at " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "brickint: " << e.what() << '\n';
  }
  return failure;
}

}  // namespace brickint::cli
