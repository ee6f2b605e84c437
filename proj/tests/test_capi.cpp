#include <doctest.h>

#include <string>

#include "fnlab/fnlab.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  fnlab_string_free(s);
  return out;
}

const char* kFieldX = R"({"p":0,"m":1,"class":"omega123","coeffs":{"[]":"pi",
  "[1]":{"in":1,"out":1,"components":[[{"c":"1","e":[1]}]]}}})";
const char* kFieldOne = R"({"p":0,"m":1,"class":"omega123","coeffs":{"[]":"pi",
  "[1]":{"in":1,"out":1,"components":[[{"c":"1","e":[0]}]]}}})";
const char* kSquare = R"({"p":1,"m":1,"coeffs":{"[]":"pi",
  "[1]":{"in":2,"out":1,"components":[[{"c":"1","e":[0,2]}]]}}})";

}  // namespace

TEST_CASE("algebra handles") {
  fnlab_algebra* a = nullptr;
  REQUIRE(fnlab_algebra_new(R"({"n":3,"p":[[1,3],[2,3]]})", &a) == FNLAB_OK);
  CHECK(fnlab_algebra_dim(a) == 5);
  char* desc = nullptr;
  REQUIRE(fnlab_algebra_describe(a, &desc) == FNLAB_OK);
  CHECK(take(desc).find("\"dim\":5") != std::string::npos);
  fnlab_algebra_free(a);

  fnlab_algebra* bad = nullptr;
  CHECK(fnlab_algebra_new(R"({"n":2,"p":[[2,1]]})", &bad) == FNLAB_INPUT_ERROR);
  CHECK(bad == nullptr);
  CHECK(std::string(fnlab_last_error()).find("strictly increasing") != std::string::npos);
  CHECK(fnlab_algebra_new("not json", &bad) == FNLAB_INPUT_ERROR);
  CHECK(fnlab_algebra_new(nullptr, &bad) == FNLAB_INPUT_ERROR);
}

TEST_CASE("bracket through the C interface") {
  fnlab_form *x = nullptr, *y = nullptr, *r = nullptr;
  REQUIRE(fnlab_form_parse(kFieldX, &x) == FNLAB_OK);
  REQUIRE(fnlab_form_parse(kFieldOne, &y) == FNLAB_OK);
  CHECK(fnlab_form_arity(x) == 0);
  CHECK(fnlab_form_dim(x) == 1);
  REQUIRE(fnlab_bracket(x, y, FNLAB_LEVEL_L1, &r) == FNLAB_OK);
  char* js = nullptr;
  REQUIRE(fnlab_form_to_json(r, &js) == FNLAB_OK);
  CHECK(take(js).find(R"("components":[[{"c":"1/1","e":[0]}]])") != std::string::npos);
  fnlab_form_free(r);
  fnlab_form_free(x);
  fnlab_form_free(y);
}

TEST_CASE("class preconditions") {
  fnlab_form* sq = nullptr;
  REQUIRE(fnlab_form_parse(kSquare, &sq) == FNLAB_OK);
  CHECK(fnlab_form_check(sq, FNLAB_LEVEL_L1) == FNLAB_OK);
  CHECK(fnlab_form_check(sq, FNLAB_LEVEL_FN123) == FNLAB_PRECONDITION_FAILED);
  CHECK(std::string(fnlab_last_error()).find("omega123") != std::string::npos);
  fnlab_form_free(sq);
  CHECK(fnlab_form_parse(R"({"p":1})", &sq) == FNLAB_INPUT_ERROR);
}

TEST_CASE("verify and report") {
  fnlab_report* rep = nullptr;
  REQUIRE(fnlab_verify(R"({"suites":["weil"],"cases_per_property":3})", &rep) == FNLAB_OK);
  CHECK(fnlab_report_passed(rep) == 1);
  char* js = nullptr;
  REQUIRE(fnlab_report_to_json(rep, 0, &js) == FNLAB_OK);
  auto text = take(js);
  CHECK(text.find("fnlab-report/1") != std::string::npos);
  CHECK(text.find("wall_ms") == std::string::npos);
  fnlab_report_free(rep);

  rep = nullptr;
  CHECK(fnlab_verify(R"({"cases_per_property":0})", &rep) == FNLAB_INPUT_ERROR);
  CHECK(rep == nullptr);
  REQUIRE(fnlab_verify(R"({"suites":["microcalc"],"mutation":"strong-diff-sign"})", &rep) == FNLAB_PROPERTY_FAILED);
  CHECK(fnlab_report_passed(rep) == 0);
  fnlab_report_free(rep);
}

TEST_CASE("three-term defect") {
  char* js = nullptr;
  const char* x = R"({"in":1,"out":1,"components":[[{"c":"1","e":[1]}]]})";
  const char* one = R"({"in":1,"out":1,"components":[[{"c":"1","e":[0]}]]})";
  const char* zero = R"({"in":1,"out":1,"components":[[]]})";
  CHECK(fnlab_jacobi3_fields(x, one, zero, "[[\"0\"],[\"2/3\"]]", 1, 0, &js) == FNLAB_OK);
  CHECK(take(js).find("\"all_zero\": true") != std::string::npos);
  js = nullptr;
  CHECK(fnlab_jacobi3_random(3, 5, 2, &js) == FNLAB_OK);
  take(js);
  js = nullptr;
  CHECK(fnlab_jacobi3_random(3, 5, 9, &js) == FNLAB_INPUT_ERROR);
  CHECK(js == nullptr);
}
