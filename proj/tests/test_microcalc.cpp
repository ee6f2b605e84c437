#include <doctest.h>

#include "microcalc.hpp"
#include "samples.hpp"

using namespace fnlab;

namespace {

// One-coordinate point with coefficients listed in basis order.
MicroPoint point(const SimplicialObject& obj, std::vector<long> coeffs) {
  auto alg = make_algebra(obj);
  REQUIRE(coeffs.size() == alg->dim());
  std::vector<std::vector<Rational>> c;
  for (long v : coeffs) c.push_back({Rational(v)});
  return MicroPoint::from_coefficients(alg, c);
}

// Microcube with the given coefficients by generator mask.
MicroPoint cube_point(std::initializer_list<std::pair<std::uint32_t, long>> entries) {
  auto alg = make_algebra(cube(3));
  std::vector<std::vector<Rational>> c(alg->dim(), std::vector<Rational>{Rational(0)});
  for (auto [mask, v] : entries) c[static_cast<std::size_t>(alg->index_of_mask(mask))][0] = v;
  return MicroPoint::from_coefficients(alg, c);
}

QPolyMap field(std::initializer_list<QPoly> comps) {
  std::vector<QPoly> v(comps);
  return QPolyMap(v.front().var_count(), v);
}

}  // namespace

TEST_CASE("restriction of a microsquare") {
  using Terms = std::vector<std::vector<InfMorphism::Term>>;
  auto g = point(cube(2), {1, 2, 3, 5});
  auto to_first_order = InfMorphism::from_terms(first_order(2), cube(2), Terms{{{1, {1, 0}}}, {{1, {0, 1}}}});
  CHECK(restrict(g, to_first_order) == point(first_order(2), {1, 2, 3}));
  auto axis = InfMorphism::from_terms(cube(1), cube(2), Terms{{{1, {1}}}, {}});
  CHECK(restrict(g, axis) == point(cube(1), {1, 2}));
  auto diag = InfMorphism::from_terms(cube(1), cube(2), Terms{{{1, {1}}}, {{1, {1}}}});
  CHECK(restrict(g, diag) == point(cube(1), {1, 5}));
}

TEST_CASE("corner amalgamation of two microsquares") {
  auto g1 = point(cube(2), {1, 2, 3, 5});
  auto g2 = point(cube(2), {1, 2, 3, 4});
  auto apex = amalgamate(g1, g2, SquareKind::Corner);
  CHECK(apex.at_mask(0)[0] == 1);
  CHECK(apex.at_mask(1)[0] == 2);
  CHECK(apex.at_mask(2)[0] == 3);
  CHECK(apex.at_mask(3)[0] == 4);
  CHECK(apex.at_mask(4)[0] == 1);

  CHECK(amalgamate(g1, g1, SquareKind::Corner).at_mask(4)[0] == 0);
  CHECK(strong_diff(g1, g2) == point(cube(1), {1, 1}));
  CHECK(strong_diff(g1, g1) == point(cube(1), {1, 0}));
  CHECK(strong_diff(g2, g1) == point(cube(1), {1, -1}));
}

TEST_CASE("axis amalgamation of two microcubes") {
  auto g1 = cube_point({{0, 0}, {1, 7}, {6, 2}, {7, 1}});
  auto g2 = cube_point({{0, 0}, {1, 7}});
  auto apex = amalgamate(g1, g2, SquareKind::Axis1);
  CHECK(apex.object() == make_object(4, {{2, 4}, {3, 4}}));
  CHECK(apex.at_mask(8)[0] == 2);
  CHECK(apex.at_mask(9)[0] == 1);
  CHECK(strong_diff_axis(g1, g2, 1) == point(cube(2), {0, 7, 2, 1}));
  CHECK(strong_diff_axis(g1, g1, 1).at_mask(2)[0] == 0);
  CHECK(strong_diff_axis(g1, g1, 1).at_mask(3)[0] == 0);
}

TEST_CASE("incompatible legs are rejected with the offending coefficient") {
  auto g1 = point(cube(2), {1, 2, 3, 5});
  auto g2 = point(cube(2), {1, 2, 4, 4});
  CHECK_THROWS_AS(strong_diff(g1, g2), PreconditionError);
  CHECK_THROWS_AS(strong_diff(g1, point(cube(1), {1, 2})), PreconditionError);
}

TEST_CASE("every amalgamation restricts back to its legs") {
  Rng rng(21);
  for (auto kind : {SquareKind::Corner, SquareKind::Axis1, SquareKind::Axis2, SquareKind::Axis3}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto [g1, g2] = random_compatible_pair(rng, kind, 2);
      auto apex = amalgamate(g1, g2, kind);
      const auto& sq = pullback_square(kind);
      CHECK(restrict(apex, sq.upper) == g1);
      CHECK(restrict(apex, sq.lower) == g2);
    }
  }
}

TEST_CASE("triangles from vector fields") {
  const QPoly x = QPoly::variable(1, 0, Rational(1));
  const QPoly one = QPoly::constant(1, Rational(1));
  const QPoly zero(1);
  auto tri = triangle_from_vector_fields(field({x}), field({one}), field({zero}));
  auto at0 = tri.at({Rational(0)});
  CHECK(at0["123"].at_mask(3)[0] == 1);
  CHECK(at0["213"].at_mask(3)[0] == 0);
  CHECK(triangle_violations(at0).empty());
  CHECK(jacobi3_defect(at0) == point(cube(1), {0, 0}));

  auto zero_tri = triangle_from_vector_fields(field({zero}), field({zero}), field({zero}));
  auto z = zero_tri.at({Rational(3)});
  for (const auto& label : TriangleConfig::labels()) CHECK(z[label] == cube_point({{0, 3}}));
  CHECK(jacobi3_defect(z) == point(cube(1), {3, 0}));
}

TEST_CASE("breaking a face agreement is a precondition failure") {
  Rng rng(22);
  auto t = random_triangle(rng, 1);
  REQUIRE(triangle_violations(t).empty());
  auto coords = t.xi[0].coords();
  coords[0][static_cast<std::size_t>(t.xi[0].algebra()->index_of_mask(1))] += 1;
  t.xi[0] = MicroPoint(t.xi[0].algebra(), coords);
  CHECK_FALSE(triangle_violations(t).empty());
  CHECK_THROWS_AS(jacobi3_defect(t), PreconditionError);
}

TEST_CASE("pairwise face agreements imply the intermediate agreements") {
  for (int m = 1; m <= 3; ++m) {
    auto tc = triangle_constraints(m);
    CHECK(tc.extra_rank == 0);
    CHECK(tc.pairwise_basis.size() == static_cast<std::size_t>(16 * m));
    CHECK(tc.full_basis.size() == tc.pairwise_basis.size());
  }
}
