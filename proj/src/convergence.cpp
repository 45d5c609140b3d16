#include "brickint/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "brickint/sampling.hpp"

namespace brickint {

void validate(const NUCertificate& cert) {
  if (cert.uniform_bound < 0) throw Error("certificate: negative uniform bound");
  if (cert.schedule.empty()) throw Error("certificate: empty schedule");
  for (std::size_t i = 0; i < cert.schedule.size(); ++i) {
    const auto& e = cert.schedule[i];
    const std::string at = "certificate entry " + std::to_string(i) + ": ";
    if (e.tail_index < 1) throw Error(at + "tail_index must be >= 1");
    if (e.tail_sup < 0) throw Error(at + "negative tail_sup");
    if (!(e.cover.total_volume < e.delta)) throw Error(at + "cover volume is not below delta");
    if (i > 0) {
      const auto& p = cert.schedule[i - 1];
      if (!(e.delta < p.delta)) throw Error(at + "deltas must strictly decrease");
      if (e.tail_sup > p.tail_sup) throw Error(at + "tail_sup must not increase");
    }
  }
}

namespace {

NUVerdict fail(std::size_t entry, std::size_t m, std::string why) {
  return {false, entry, m, std::move(why)};
}

}  // namespace

NUVerdict verify_nu(const StepSequence& seq, const Target& target, const NUCertificate& cert, const VerifyOptions& opts) {
  validate(cert);
  for (std::size_t i = 0; i < cert.schedule.size(); ++i) {
    const auto& e = cert.schedule[i];
    std::size_t last = e.tail_index + opts.horizon;
    if (opts.last_index) last = std::min(last, *opts.last_index);
    for (std::size_t m = e.tail_index; m <= last; ++m) {
      StepFunction g = seq(m);
      if (sup_abs(g) > cert.uniform_bound)
        return fail(i, m, "g_" + std::to_string(m) + " exceeds the uniform bound");
      if (const auto* step = std::get_if<StepFunction>(&target)) {
        Rational d = sup_diff_outside(g, *step, e.cover.bricks);
        if (d > e.tail_sup)
          return fail(i, m, "sup |g_m - f| off the cover is " + to_string(d) + " > " + to_string(e.tail_sup));
      } else {
        const auto& f = std::get<PointOracle>(target);
        Rng rng = stream(opts.seed, i * 1000003 + m);
        const double bound = e.tail_sup.get_d() + opts.slack;
        for (std::size_t s = 0; s < opts.samples; ++s) {
          Point x = random_point(g.ambient, rng);
          if (e.cover.contains(x)) continue;
          double d = std::abs(evaluate(g, x).get_d() - f(x));
          if (!(d <= bound))
            return fail(i, m, "|g_m - f| = " + std::to_string(d) + " at " + to_string(x) + " off the cover");
        }
      }
    }
  }
  return {};
}

Rational entry_error_bound(const NUEntry& e, const Rational& c, const Rational& ambient_volume) {
  Rational b = e.tail_sup * ambient_volume;
  if (!e.cover.empty()) b += 2 * c * e.delta;
  return b;
}

KIntegralResult k_integral(const StepSequence& seq, const NUCertificate& cert, const Rational& tol) {
  validate(cert);
  for (std::size_t i = 0; i < cert.schedule.size(); ++i) {
    const auto& e = cert.schedule[i];
    StepFunction g = seq(e.tail_index);
    Rational bound = entry_error_bound(e, cert.uniform_bound, volume(g.ambient));
    if (bound <= tol) return {integral(g), bound, e.tail_index, i};
  }
  throw Error("certificate schedule exhausted before tolerance " + to_string(tol));
}

}  // namespace brickint
