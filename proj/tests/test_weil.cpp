#include <doctest.h>

#include "oracles.hpp"
#include "random.hpp"
#include "weil.hpp"

using namespace fnlab;

namespace {

std::vector<std::vector<int>> library_basis(const SimplicialObject& obj) {
  auto alg = make_algebra(obj);
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < alg->dim(); ++i) out.push_back(alg->exponent(i));
  return out;
}

std::vector<std::vector<int>> sorted(std::vector<std::vector<int>> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Product by expanding monomials and discarding those outside the oracle basis.
WeilElement naive_product(const WeilElement& a, const WeilElement& b) {
  auto alg = a.algebra();
  const auto& obj = alg->object();
  auto basis = oracle::weil_basis(obj.n, obj.p_set, obj.power_bounds);
  WeilElement r = weil_zero(alg);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::vector<int> e = alg->exponent(i);
      for (std::size_t g = 0; g < e.size(); ++g) e[g] += alg->exponent(j)[g];
      if (std::find(basis.begin(), basis.end(), e) == basis.end()) continue;
      r[static_cast<std::size_t>(alg->index_of(e))] += a[i] * b[j];
    }
  }
  return r;
}

}  // namespace

TEST_CASE("cube algebras have 2^n square-free monomials") {
  for (int n = 0; n <= 6; ++n) {
    auto alg = make_algebra(cube(n));
    CHECK(alg->dim() == (std::size_t{1} << n));
    CHECK(sorted(library_basis(cube(n))) == sorted(oracle::weil_basis(n, {})));
  }
}

TEST_CASE("named objects match the enumeration oracle") {
  struct Named {
    SimplicialObject obj;
    std::size_t dim;
  };
  const std::vector<Named> named = {{first_order(2), 3},
                                    {make_object(3, {{1, 3}, {2, 3}}), 5},
                                    {make_object(4, {{2, 4}, {3, 4}}), 10},
                                    {make_object(1, {}, {3}), 3}};
  for (const auto& nm : named) {
    auto oracle_basis = oracle::weil_basis(nm.obj.n, nm.obj.p_set, nm.obj.power_bounds);
    CHECK(oracle_basis.size() == nm.dim);
    CHECK(sorted(library_basis(nm.obj)) == sorted(oracle_basis));
  }
}

TEST_CASE("basis listing is graded then lexicographic") {
  auto alg = make_algebra(make_object(3, {{1, 3}, {2, 3}}));
  REQUIRE(alg->dim() == 5);
  CHECK(alg->monomial_name(0) == "1");
  CHECK(alg->monomial_name(1) == "d1");
  CHECK(alg->monomial_name(2) == "d2");
  CHECK(alg->monomial_name(3) == "d3");
  CHECK(alg->monomial_name(4) == "d1d2");
  CHECK(alg->index_of({1, 0, 1}) == -1);
  CHECK(alg->object().name() == "D^3{(1,3),(2,3)}");
}

TEST_CASE("malformed index sequences are rejected") {
  CHECK_THROWS_AS(make_object(2, {{1, 3}}), ValidationError);
  CHECK_THROWS_AS(make_object(2, {{2, 1}}), ValidationError);
  CHECK_THROWS_AS(make_object(2, {{1, 1}}), ValidationError);
  CHECK_THROWS_AS(make_object(-1), ValidationError);
  CHECK_THROWS_AS(make_object(1, {}, {0}), ValidationError);
}

TEST_CASE("direct sums of infinitesimal objects") {
  CHECK(oplus(cube(1), cube(1)) == first_order(2));
  CHECK(oplus(cube(2), cube(1)) == make_object(3, {{1, 3}, {2, 3}}));
  CHECK_THROWS_AS(oplus(make_object(1, {}, {3}), cube(1)), UnsupportedOperation);
}

TEST_CASE("multiplication agrees with naive expansion") {
  Rng rng(7);
  const std::vector<SimplicialObject> objects = {cube(3), first_order(3), make_object(4, {{2, 4}, {3, 4}}),
                                                 make_object(2, {}, {3, 2}), make_object(1, {}, {4})};
  for (const auto& obj : objects) {
    auto alg = make_algebra(obj);
    for (int trial = 0; trial < 10; ++trial) {
      WeilElement a = weil_zero(alg), b = weil_zero(alg);
      for (std::size_t i = 0; i < alg->dim(); ++i) {
        a[i] = rng.rational();
        b[i] = rng.rational();
      }
      CHECK(a * b == naive_product(a, b));
    }
  }
}

TEST_CASE("generators square to zero unless the bound allows it") {
  auto d = make_algebra(cube(1));
  auto x = weil_generator(d, 1);
  CHECK(x * x == weil_zero(d));
  auto d2 = make_algebra(make_object(1, {}, {3}));
  auto y = weil_generator(d2, 1);
  CHECK_FALSE(y * y == weil_zero(d2));
  CHECK(y * y * y == weil_zero(d2));
}

TEST_CASE("morphism validation") {
  using Terms = std::vector<std::vector<InfMorphism::Term>>;
  // (d1, d2) ↦ (d1, d2, d1 d2) into D^3{(1,3),(2,3)}
  CHECK_NOTHROW(InfMorphism::from_terms(cube(2), make_object(3, {{1, 3}, {2, 3}}),
                                        Terms{{{1, {1, 0}}}, {{1, {0, 1}}}, {{1, {1, 1}}}}));
  // diagonal d ↦ (d, d) into D^2
  CHECK_NOTHROW(InfMorphism::from_terms(cube(1), cube(2), Terms{{{1, {1}}}, {{1, {1}}}}));
  // d ↦ 1 + d moves the base point
  CHECK_THROWS_AS(InfMorphism::from_terms(cube(1), cube(1), Terms{{{1, {0}}, {1, {1}}}}), ValidationError);
  // the diagonal lands in D(2); the plain inclusion of D^2 does not
  CHECK_NOTHROW(InfMorphism::from_terms(cube(1), first_order(2), Terms{{{1, {1}}}, {{1, {1}}}}));
  CHECK_THROWS_AS(InfMorphism::from_terms(cube(2), first_order(2), Terms{{{1, {1, 0}}}, {{1, {0, 1}}}}),
                  ValidationError);
}

TEST_CASE("composing morphisms composes restrictions") {
  using Terms = std::vector<std::vector<InfMorphism::Term>>;
  auto diag = InfMorphism::from_terms(cube(1), cube(2), Terms{{{1, {1}}}, {{1, {1}}}});
  auto incl = InfMorphism::from_terms(cube(2), cube(3), Terms{{{1, {1, 0}}}, {{1, {0, 1}}}, {{2, {1, 1}}}});
  auto alg = make_algebra(cube(3));
  WeilElement x = weil_zero(alg);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = Rational(static_cast<long>(i) + 1);
  CHECK(compose_morphisms(diag, incl).pull(x) == diag.pull(incl.pull(x)));
}
