#include "brickint/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace brickint {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 1)));
}

Rational stratified_dyadic(const Interval& f, unsigned j, unsigned strata, Rng& rng, unsigned bits) {
  if (f.degenerate()) return f.lo;
  const std::uint64_t steps = std::uint64_t{1} << bits;
  std::uniform_int_distribution<std::uint64_t> pick(0, steps - 1);
  // odd numerator over 2^(bits+1): never lands on a slice boundary
  Rational u(mpz_class(static_cast<unsigned long>(2 * pick(rng) + 1)), mpz_class(1) << (bits + 1));
  Rational t = (Rational(j) + u) / strata;
  Rational x = f.lo + t * f.length();
  x.canonicalize();
  return x;
}

Rational random_dyadic(const Interval& f, Rng& rng, unsigned bits) {
  return stratified_dyadic(f, 0, 1, rng, bits);
}

Point random_point(const Brick& b, Rng& rng, unsigned bits) {
  Point x;
  x.reserve(b.dim());
  for (const auto& f : b.factors) x.push_back(random_dyadic(f, rng, bits));
  return x;
}

std::vector<Point> latin_hypercube(const Brick& b, unsigned count, Rng& rng, unsigned bits) {
  std::vector<Point> pts(count, Point(b.dim()));
  std::vector<unsigned> perm(count);
  for (std::size_t k = 0; k < b.dim(); ++k) {
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (unsigned i = 0; i < count; ++i) pts[i][k] = stratified_dyadic(b[k], perm[i], count, rng, bits);
  }
  return pts;
}

}  // namespace brickint
