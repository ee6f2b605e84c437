#include "samples.hpp"

namespace fnlab {

QPolyMap random_kernel(Rng& rng, int p, int m, const SampleShape& shape) {
  return rng.poly_map(kernel_vars(p, m), static_cast<std::size_t>(m), shape.deg_max, shape.max_terms);
}

QPolyMap random_multilinear_kernel(Rng& rng, int p, int m, const SampleShape& shape) {
  const std::size_t n = kernel_vars(p, m);
  QPolyMap f(n, static_cast<std::size_t>(m));
  for (auto& comp : f.components) {
    std::vector<QPoly::Term> terms;
    const auto count = rng.range(1, shape.max_terms);
    for (std::int64_t t = 0; t < count; ++t) {
      Monomial mono(n, 0);
      // Restricted growth string: a random set partition of the axes.
      std::vector<int> block(static_cast<std::size_t>(p));
      int blocks = 0;
      for (int i = 0; i < p; ++i) {
        block[static_cast<std::size_t>(i)] = static_cast<int>(rng.range(0, blocks));
        if (block[static_cast<std::size_t>(i)] == blocks) ++blocks;
      }
      for (int b = 0; b < blocks; ++b) {
        std::uint32_t s = 0;
        for (int i = 0; i < p; ++i) {
          if (block[static_cast<std::size_t>(i)] == b) s |= 1U << i;
        }
        ++mono[kernel_var(s, static_cast<int>(rng.range(0, m - 1)), m)];
      }
      const auto base_deg = rng.range(0, std::max(0, shape.deg_max - 1));
      for (std::int64_t d = 0; d < base_deg; ++d) ++mono[kernel_var(0, static_cast<int>(rng.range(0, m - 1)), m)];
      terms.emplace_back(std::move(mono), rng.nonzero_rational());
    }
    comp = QPoly::from_terms(n, std::move(terms));
  }
  return f;
}

QPolyMap random_base_preserving_kernel(Rng& rng, int p, int m, const SampleShape& shape) {
  QPolyMap f = random_kernel(rng, p, m, shape);
  QPolyMap pi = projection_kernel(p, m);
  const std::size_t base_vars = static_cast<std::size_t>(m);
  for (std::size_t c = 0; c < f.components.size(); ++c) {
    std::vector<QPoly::Term> keep;
    for (const auto& [mono, coef] : f.components[c].terms()) {
      bool touches = false;
      for (std::size_t v = base_vars; v < mono.size(); ++v) touches = touches || mono[v] != 0;
      if (touches) keep.emplace_back(mono, coef);
    }
    f.components[c] = pi.components[c] + QPoly::from_terms(f.in_dim, std::move(keep));
  }
  return f;
}

FormElem random_form(Rng& rng, FormClass c, int p, int m, const SampleShape& shape) {
  switch (c) {
    case FormClass::Omega0:
    case FormClass::Omega1:
      return FormElem::tangent(p, m, random_kernel(rng, p, m, shape), FormClass::Omega1);
    case FormClass::Omega12:
      return FormElem::tangent(p, m, random_multilinear_kernel(rng, p, m, shape), FormClass::Omega12);
    case FormClass::Omega13:
      return antisymmetrize(FormElem::tangent(p, m, random_kernel(rng, p, m, shape))).with_tag(FormClass::Omega13);
    case FormClass::Omega123:
      return antisymmetrize(FormElem::tangent(p, m, random_multilinear_kernel(rng, p, m, shape)))
          .with_tag(FormClass::Omega123);
  }
  throw ValidationError("unknown form class");
}

QPolyMap random_vector_field(Rng& rng, int m, const SampleShape& shape) {
  return rng.poly_map(static_cast<std::size_t>(m), static_cast<std::size_t>(m), shape.deg_max, shape.max_terms);
}

std::vector<Rational> random_point(Rng& rng, int m) {
  std::vector<Rational> x;
  for (int i = 0; i < m; ++i) x.push_back(rng.rational());
  return x;
}

MicroPoint random_micropoint(Rng& rng, const SimplicialObject& obj, int m) {
  auto alg = make_algebra(obj);
  std::vector<std::vector<Rational>> c(alg->dim());
  for (auto& v : c) v = random_point(rng, m);
  return MicroPoint::from_coefficients(alg, c);
}

std::pair<MicroPoint, MicroPoint> random_compatible_pair(Rng& rng, SquareKind kind, int m) {
  const auto& sq = pullback_square(kind);
  MicroPoint g1 = random_micropoint(rng, sq.leg, m);
  const auto& in = sq.shared_in;
  const std::size_t leg_dim = in.target_algebra()->dim();
  RationalMatrix rows;
  for (std::size_t s = 0; s < in.source_algebra()->dim(); ++s) {
    std::vector<Rational> row(leg_dim);
    for (std::size_t t = 0; t < leg_dim; ++t) row[t] = in.image(t)[s];
    rows.push_back(std::move(row));
  }
  auto free = nullspace(std::move(rows), leg_dim);
  std::vector<WeilElement> coords = g1.coords();
  for (auto& c : coords) {
    for (const auto& v : free) {
      Rational r = rng.rational();
      for (std::size_t t = 0; t < leg_dim; ++t) c[t] += r * v[t];
    }
  }
  return {g1, MicroPoint(g1.algebra(), std::move(coords))};
}

}  // namespace fnlab
