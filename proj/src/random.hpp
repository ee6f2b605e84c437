#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "poly.hpp"
#include "rational.hpp"

namespace fnlab {

/// splitmix64 step, used to derive independent per-case seeds.
std::uint64_t mix_seed(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t base, const std::string& label, std::uint64_t index);

/// Deterministic generator for test data.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi);
  bool coin() { return range(0, 1) == 1; }
  /// Numerator in [-9, 9], denominator in {1, 2, 3}.
  Rational rational();
  Rational nonzero_rational();

  /// Random polynomial with up to max_terms terms of total degree <= deg_max.
  QPoly poly(std::size_t nvars, int deg_max, int max_terms);
  QPolyMap poly_map(std::size_t in, std::size_t out, int deg_max, int max_terms);

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace fnlab
