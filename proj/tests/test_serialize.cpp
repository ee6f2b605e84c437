#include <doctest.h>

#include "samples.hpp"
#include "serialize.hpp"

using namespace fnlab;

TEST_CASE("objects round trip") {
  for (const auto& obj : {cube(3), first_order(2), make_object(4, {{2, 4}, {3, 4}}), make_object(2, {}, {3, 2})}) {
    CHECK(object_from_json(to_json(obj)) == obj);
    CHECK(object_from_json(parse_json(to_json(obj).dump())) == obj);
  }
  CHECK(object_from_json(parse_json(R"({"n":3,"p":[[1,3],[2,3]]})")) == make_object(3, {{1, 3}, {2, 3}}));
}

TEST_CASE("malformed object JSON") {
  CHECK_THROWS_AS(parse_json("{"), ValidationError);
  CHECK_THROWS_AS(object_from_json(parse_json(R"({"p":[]})")), ValidationError);
  CHECK_THROWS_AS(object_from_json(parse_json(R"({"n":2,"p":[[1,5]]})")), ValidationError);
  CHECK_THROWS_AS(object_from_json(parse_json(R"({"n":2,"p":"x"})")), ValidationError);
  CHECK_THROWS_AS(object_from_json(parse_json(R"({"n":"2"})")), ValidationError);
}

TEST_CASE("kernels, forms and points round trip") {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = rng.poly_map(3, 2, 3, 4);
    CHECK(polymap_from_json(parse_json(to_json(f).dump())) == f);
    const int p = trial % 3;
    auto x = random_form(rng, FormClass::Omega13, p, 1 + trial % 2, {});
    auto back = form_from_json(parse_json(to_json(x).dump()));
    CHECK(back == x);
    CHECK(back.tag() == x.tag());
    auto pt = random_micropoint(rng, make_object(3, {{1, 3}, {2, 3}}), 2);
    CHECK(micropoint_from_json(parse_json(to_json(pt).dump())) == pt);
  }
}

TEST_CASE("morphisms round trip") {
  using Terms = std::vector<std::vector<InfMorphism::Term>>;
  auto psi = InfMorphism::from_terms(cube(2), make_object(3, {{1, 3}, {2, 3}}),
                                     Terms{{{1, {1, 0}}}, {{1, {0, 1}}}, {{1, {1, 1}}}});
  CHECK(morphism_from_json(parse_json(to_json(psi).dump())) == psi);
}

TEST_CASE("form JSON in the documented shape") {
  auto x = form_from_json(parse_json(R"({"p":1,"k":1,"m":1,"class":"omega123",
      "coeffs":{"[]":"pi","[1]":{"in":2,"out":1,"components":[[{"c":"1","e":[0,1]}]]}}})"));
  CHECK(x.arity() == 1);
  CHECK(x.tag() == FormClass::Omega123);
  CHECK(is_omega123(x));
  CHECK_THROWS_AS(form_from_json(parse_json(R"({"p":1,"m":1,"coeffs":{"[]":"sigma"}})")), ValidationError);
  CHECK_THROWS_AS(form_from_json(parse_json(R"({"p":1,"m":1,"class":"omega9","coeffs":{}})")), ValidationError);
  CHECK_THROWS_AS(
      form_from_json(parse_json(R"({"p":1,"m":1,"coeffs":{"[1]":{"in":1,"out":1,"components":[[]]}}})")),
      ValidationError);
  CHECK_THROWS_AS(form_from_json(parse_json(R"({"p":0,"m":1,"coeffs":{"[]":{"in":1,"out":1,
      "components":[[{"c":"1/0","e":[1]}]]}}})")),
                  ValidationError);
}
