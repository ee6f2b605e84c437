#pragma once

#include "microcalc.hpp"
#include "random.hpp"
#include "tvforms.hpp"

namespace fnlab {

struct SampleShape {
  int deg_max = 2;
  int max_terms = 3;
};

QPolyMap random_kernel(Rng& rng, int p, int m, const SampleShape& shape);
/// Kernel with every monomial of degree one in each axis.
QPolyMap random_multilinear_kernel(Rng& rng, int p, int m, const SampleShape& shape);
/// π plus terms that vanish when every non-base coordinate is zero.
QPolyMap random_base_preserving_kernel(Rng& rng, int p, int m, const SampleShape& shape);

FormElem random_form(Rng& rng, FormClass c, int p, int m, const SampleShape& shape);
QPolyMap random_vector_field(Rng& rng, int m, const SampleShape& shape);
std::vector<Rational> random_point(Rng& rng, int m);

MicroPoint random_micropoint(Rng& rng, const SimplicialObject& obj, int m);
/// Two points on the leg of a square that agree on its shared object.
std::pair<MicroPoint, MicroPoint> random_compatible_pair(Rng& rng, SquareKind kind, int m);

}  // namespace fnlab
