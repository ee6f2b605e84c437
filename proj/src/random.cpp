#include "random.hpp"

namespace fnlab {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, const std::string& label, std::uint64_t index) {
  std::uint64_t h = mix_seed(base);
  for (unsigned char c : label) h = mix_seed(h ^ c);
  return mix_seed(h ^ mix_seed(index));
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

namespace {

Rational fraction(std::int64_t n, std::int64_t d) {
  Rational q(static_cast<long>(n), static_cast<unsigned long>(d));
  q.canonicalize();
  return q;
}

}  // namespace

Rational Rng::rational() { return fraction(range(-9, 9), range(1, 3)); }

Rational Rng::nonzero_rational() {
  std::int64_t n = range(1, 9) * (coin() ? 1 : -1);
  return fraction(n, range(1, 3));
}

QPoly Rng::poly(std::size_t nvars, int deg_max, int max_terms) {
  std::vector<QPoly::Term> terms;
  int count = static_cast<int>(range(1, max_terms));
  for (int t = 0; t < count; ++t) {
    Monomial m(nvars, 0);
    int deg = static_cast<int>(range(0, deg_max));
    if (nvars == 0) deg = 0;
    for (int k = 0; k < deg; ++k) ++m[static_cast<std::size_t>(range(0, static_cast<std::int64_t>(nvars) - 1))];
    terms.emplace_back(std::move(m), nonzero_rational());
  }
  return QPoly::from_terms(nvars, std::move(terms));
}

QPolyMap Rng::poly_map(std::size_t in, std::size_t out, int deg_max, int max_terms) {
  QPolyMap f(in, out);
  for (auto& c : f.components) c = poly(in, deg_max, max_terms);
  return f;
}

}  // namespace fnlab
