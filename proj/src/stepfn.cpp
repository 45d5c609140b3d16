#include "brickint/stepfn.hpp"

namespace brickint {

StepFunction::StepFunction(Brick t, std::vector<Term> ts) : ambient(std::move(t)), terms(std::move(ts)) {
  for (const auto& term : terms)
    if (!subset(term.support, ambient))
      throw Error("support " + format_brick(term.support) + " not inside ambient " + format_brick(ambient));
}

void StepFunction::add(Rational c, Brick support) {
  validate(support);
  if (!subset(support, ambient))
    throw Error("support " + format_brick(support) + " not inside ambient " + format_brick(ambient));
  terms.push_back({std::move(c), std::move(support)});
}

StepFunction indicator(const Brick& ambient, const Brick& support, const Rational& c) {
  StepFunction g(ambient);
  g.add(c, support);
  return g;
}

Rational evaluate(const StepFunction& g, const Point& x) {
  if (!g.ambient.contains(x)) throw Error("point " + to_string(x) + " outside ambient " + format_brick(g.ambient));
  Rational v = 0;
  for (const auto& t : g.terms)
    if (t.support.contains(x)) v += t.coeff;
  return v;
}

Rational integral(const StepFunction& g) {
  Rational s = 0;
  for (const auto& t : g.terms) s += t.coeff * volume(t.support);
  return s;
}

namespace {

std::vector<Brick> supports(const StepFunction& g) {
  std::vector<Brick> out;
  out.reserve(g.terms.size());
  for (const auto& t : g.terms) out.push_back(t.support);
  return out;
}

}  // namespace

StepFunction canonicalize(const StepFunction& g) {
  StepFunction out(g.ambient);
  for (auto& cell : common_refinement(supports(g), g.ambient)) {
    Rational v = evaluate(g, cell.center());
    if (v != 0) out.terms.push_back({std::move(v), std::move(cell)});
  }
  return out;
}

StepFunction combine(const Rational& a, const StepFunction& g1, const Rational& b, const StepFunction& g2) {
  if (!(g1.ambient == g2.ambient)) throw Error("combine: ambient mismatch");
  StepFunction out(g1.ambient);
  out.terms.reserve(g1.terms.size() + g2.terms.size());
  if (a != 0)
    for (const auto& t : g1.terms) out.terms.push_back({a * t.coeff, t.support});
  if (b != 0)
    for (const auto& t : g2.terms) out.terms.push_back({b * t.coeff, t.support});
  return out;
}

Rational sup_diff_outside(const StepFunction& g1, const StepFunction& g2, const std::vector<Brick>& exceptions) {
  if (!(g1.ambient == g2.ambient)) throw Error("sup_diff_outside: ambient mismatch");
  const Brick& amb = g1.ambient;
  std::vector<Brick> all = supports(g1);
  for (const auto& t : g2.terms) all.push_back(t.support);
  std::vector<Brick> holes;
  for (const auto& e : exceptions) {
    if (auto c = intersect(e, amb)) {
      holes.push_back(*c);
      all.push_back(*c);
    }
  }
  Rational sup = 0;
  for (const auto& cell : common_refinement(all, amb)) {
    const Point x = cell.center();
    bool hidden = false;
    for (const auto& h : holes)
      if (h.contains(x)) {
        hidden = true;
        break;
      }
    if (hidden) continue;
    Rational d = abs(evaluate(g1, x) - evaluate(g2, x));
    if (d > sup) sup = d;
  }
  return sup;
}

Rational sup_abs(const StepFunction& g) {
  return sup_diff_outside(g, StepFunction(g.ambient), {});
}

Rational support_volume_sum(const StepFunction& g) {
  Rational s = 0;
  for (const auto& t : g.terms) s += volume(t.support);
  return s;
}

}  // namespace brickint
