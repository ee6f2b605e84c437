#include <cstdlib>
#include <cstring>
#include <string>

#include "fnlab/fnlab.h"
#include "samples.hpp"
#include "serialize.hpp"
#include "verify.hpp"

struct fnlab_algebra {
  fnlab::WeilAlgebraPtr alg;
};

struct fnlab_form {
  fnlab::FormElem form;
};

struct fnlab_report {
  fnlab::Report report;
};

namespace {

thread_local std::string last_error;

fnlab_status fail(fnlab_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
fnlab_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const fnlab::Error& e) {
    switch (e.kind()) {
      case fnlab::ErrorKind::Input: return fail(FNLAB_INPUT_ERROR, e.what());
      case fnlab::ErrorKind::Precondition: return fail(FNLAB_PRECONDITION_FAILED, e.what());
      case fnlab::ErrorKind::Internal: return fail(FNLAB_INTERNAL_ERROR, e.what());
    }
    return fail(FNLAB_INTERNAL_ERROR, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(FNLAB_INPUT_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FNLAB_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(FNLAB_INTERNAL_ERROR, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

fnlab_status require(const void* p, const char* what) {
  return p == nullptr ? fail(FNLAB_INPUT_ERROR, std::string(what) + " is NULL") : FNLAB_OK;
}

fnlab::FormClass level_class(fnlab_level level) {
  switch (level) {
    case FNLAB_LEVEL_L1: return fnlab::FormClass::Omega1;
    case FNLAB_LEVEL_L12: return fnlab::FormClass::Omega12;
    case FNLAB_LEVEL_FN13: return fnlab::FormClass::Omega13;
    case FNLAB_LEVEL_FN123: return fnlab::FormClass::Omega123;
  }
  throw fnlab::ValidationError("unknown bracket level");
}

bool tag_covers(fnlab::FormClass tag, fnlab::FormClass need) {
  using fnlab::FormClass;
  if (tag == need || tag == FormClass::Omega123) return true;
  if (need == FormClass::Omega1) return tag == FormClass::Omega12 || tag == FormClass::Omega13;
  return false;
}

fnlab::Json defect_entry(const fnlab::TriangleConfig& t) {
  fnlab::Json e = fnlab::Json::object();
  auto bad = fnlab::triangle_violations(t);
  e["violations"] = bad;
  if (!bad.empty()) return e;
  auto d = fnlab::jacobi3_defect(t);
  fnlab::Json principal = fnlab::Json::array();
  bool zero = true;
  for (int j = 0; j < d.m(); ++j) {
    principal.push_back(fnlab::format_rational(d.coord(j)[1]));
    zero = zero && sgn(d.coord(j)[1]) == 0;
  }
  e["defect"] = principal;
  e["zero"] = zero;
  return e;
}

}  // namespace

extern "C" {

const char* fnlab_last_error(void) { return last_error.c_str(); }

void fnlab_string_free(char* s) { std::free(s); }

fnlab_status fnlab_algebra_new(const char* object_json, fnlab_algebra** out) {
  if (auto s = require(object_json, "object_json"); s != FNLAB_OK) return s;
  if (auto s = require(out, "out"); s != FNLAB_OK) return s;
  return guarded([&] {
    auto obj = fnlab::object_from_json(fnlab::parse_json(object_json));
    *out = new fnlab_algebra{fnlab::make_algebra(obj)};
    return FNLAB_OK;
  });
}

void fnlab_algebra_free(fnlab_algebra* a) { delete a; }

size_t fnlab_algebra_dim(const fnlab_algebra* a) { return a ? a->alg->dim() : 0; }

fnlab_status fnlab_algebra_describe(const fnlab_algebra* a, char** out_json) {
  if (auto s = require(a, "algebra"); s != FNLAB_OK) return s;
  if (auto s = require(out_json, "out_json"); s != FNLAB_OK) return s;
  return guarded([&] {
    fnlab::Json basis = fnlab::Json::array();
    fnlab::Json names = fnlab::Json::array();
    for (std::size_t i = 0; i < a->alg->dim(); ++i) {
      basis.push_back(a->alg->exponent(i));
      names.push_back(a->alg->monomial_name(i));
    }
    fnlab::Json j{{"object", fnlab::to_json(a->alg->object())},
                  {"name", a->alg->object().name()},
                  {"dim", a->alg->dim()},
                  {"basis", basis},
                  {"names", names}};
    *out_json = dup_string(j.dump());
    return FNLAB_OK;
  });
}

fnlab_status fnlab_form_parse(const char* form_json, fnlab_form** out) {
  if (auto s = require(form_json, "form_json"); s != FNLAB_OK) return s;
  if (auto s = require(out, "out"); s != FNLAB_OK) return s;
  return guarded([&] {
    *out = new fnlab_form{fnlab::form_from_json(fnlab::parse_json(form_json))};
    return FNLAB_OK;
  });
}

void fnlab_form_free(fnlab_form* f) { delete f; }

int fnlab_form_arity(const fnlab_form* f) { return f ? f->form.arity() : -1; }

int fnlab_form_dim(const fnlab_form* f) { return f ? f->form.dim() : -1; }

fnlab_status fnlab_form_to_json(const fnlab_form* f, char** out_json) {
  if (auto s = require(f, "form"); s != FNLAB_OK) return s;
  if (auto s = require(out_json, "out_json"); s != FNLAB_OK) return s;
  return guarded([&] {
    *out_json = dup_string(fnlab::to_json(f->form).dump());
    return FNLAB_OK;
  });
}

fnlab_status fnlab_form_check(const fnlab_form* f, fnlab_level level) {
  if (auto s = require(f, "form"); s != FNLAB_OK) return s;
  return guarded([&] {
    const auto need = level_class(level);
    if (!tag_covers(f->form.tag(), need)) {
      return fail(FNLAB_PRECONDITION_FAILED, "form is tagged " + fnlab::class_name(f->form.tag()) + " but the level needs " +
                                                 fnlab::class_name(need));
    }
    auto why = fnlab::class_failure(f->form, need);
    return why.empty() ? FNLAB_OK : fail(FNLAB_PRECONDITION_FAILED, why);
  });
}

fnlab_status fnlab_bracket(const fnlab_form* x, const fnlab_form* y, fnlab_level level, fnlab_form** out) {
  if (auto s = require(x, "x"); s != FNLAB_OK) return s;
  if (auto s = require(y, "y"); s != FNLAB_OK) return s;
  if (auto s = require(out, "out"); s != FNLAB_OK) return s;
  return guarded([&] {
    if (x->form.dim() != y->form.dim()) throw fnlab::ValidationError("forms live on different model dimensions");
    if (x->form.expansion() != 1 || y->form.expansion() != 1) {
      throw fnlab::ValidationError("bracket operands must be first-order expansions (k = 1)");
    }
    fnlab::FormElem r;
    switch (level) {
      case FNLAB_LEVEL_L1: r = fnlab::bracket_L1(x->form, y->form); break;
      case FNLAB_LEVEL_L12: r = fnlab::bracket_L12(x->form, y->form); break;
      case FNLAB_LEVEL_FN13: r = fnlab::bracket_FN13(x->form, y->form); break;
      case FNLAB_LEVEL_FN123: r = fnlab::bracket_FN123(x->form, y->form); break;
      default: throw fnlab::ValidationError("unknown bracket level");
    }
    if (auto why = fnlab::class_failure(r, level_class(level)); !why.empty()) {
      throw fnlab::InvariantViolation("bracket output fails " + why);
    }
    *out = new fnlab_form{std::move(r)};
    return FNLAB_OK;
  });
}

fnlab_status fnlab_verify(const char* config_json, fnlab_report** out) {
  if (auto s = require(out, "out"); s != FNLAB_OK) return s;
  return guarded([&] {
    fnlab::SuiteConfig cfg;
    if (config_json != nullptr) cfg = fnlab::SuiteConfig::from_json(fnlab::parse_json(config_json));
    *out = new fnlab_report{fnlab::run_suite(cfg)};
    return (*out)->report.passed() ? FNLAB_OK : FNLAB_PROPERTY_FAILED;
  });
}

void fnlab_report_free(fnlab_report* r) { delete r; }

int fnlab_report_passed(const fnlab_report* r) { return r && r->report.passed() ? 1 : 0; }

fnlab_status fnlab_report_to_json(const fnlab_report* r, int include_timing, char** out_json) {
  if (auto s = require(r, "report"); s != FNLAB_OK) return s;
  if (auto s = require(out_json, "out_json"); s != FNLAB_OK) return s;
  return guarded([&] {
    *out_json = dup_string(r->report.to_json(include_timing != 0).dump(2));
    return FNLAB_OK;
  });
}

fnlab_status fnlab_jacobi3_fields(const char* x_json, const char* y_json, const char* z_json, const char* points_json,
                                  uint64_t seed, int points, char** out_json) {
  for (const char* p : {x_json, y_json, z_json}) {
    if (auto s = require(p, "vector field"); s != FNLAB_OK) return s;
  }
  if (auto s = require(out_json, "out_json"); s != FNLAB_OK) return s;
  return guarded([&] {
    auto x = fnlab::polymap_from_json(fnlab::parse_json(x_json));
    auto y = fnlab::polymap_from_json(fnlab::parse_json(y_json));
    auto z = fnlab::polymap_from_json(fnlab::parse_json(z_json));
    const auto m = static_cast<int>(x.in_dim);
    if (m < 1) throw fnlab::ValidationError("vector fields need at least one coordinate");
    for (const auto* f : {&x, &y, &z}) {
      if (f->in_dim != x.in_dim || f->out_dim != x.in_dim) {
        throw fnlab::PreconditionError("the three fields must be vector fields on a common R^" + std::to_string(m));
      }
    }
    auto field = fnlab::triangle_from_vector_fields(x, y, z);
    std::vector<std::vector<fnlab::Rational>> pts;
    if (points_json != nullptr) {
      auto pj = fnlab::parse_json(points_json);
      if (!pj.is_array()) throw fnlab::ValidationError("points must be a list of coordinate lists");
      for (const auto& p : pj) {
        if (!p.is_array() || p.size() != static_cast<std::size_t>(m)) {
          throw fnlab::ValidationError("each point needs " + std::to_string(m) + " coordinates");
        }
        std::vector<fnlab::Rational> v;
        for (const auto& c : p) v.push_back(fnlab::parse_rational(c.is_string() ? c.get<std::string>() : c.dump()));
        pts.push_back(std::move(v));
      }
    } else {
      if (points < 1) throw fnlab::ValidationError("point count must be positive");
      fnlab::Rng rng(fnlab::derive_seed(seed, "jacobi3.points", 0));
      for (int i = 0; i < points; ++i) pts.push_back(fnlab::random_point(rng, m));
    }
    fnlab::Json cases = fnlab::Json::array();
    bool all_zero = true;
    bool compatible = true;
    for (const auto& p : pts) {
      fnlab::Json e = defect_entry(field.at(p));
      fnlab::Json coords = fnlab::Json::array();
      for (const auto& c : p) coords.push_back(fnlab::format_rational(c));
      e["point"] = coords;
      compatible = compatible && e["violations"].empty();
      all_zero = all_zero && e.value("zero", false);
      cases.push_back(std::move(e));
    }
    fnlab::Json j{{"mode", "fields"}, {"m", m}, {"cases", cases}, {"all_zero", all_zero}};
    *out_json = dup_string(j.dump(2));
    if (!compatible) return fail(FNLAB_PRECONDITION_FAILED, "vector field configuration violates a face agreement");
    return all_zero ? FNLAB_OK : fail(FNLAB_PROPERTY_FAILED, "nonzero defect");
  });
}

fnlab_status fnlab_jacobi3_random(uint64_t seed, int count, int m, char** out_json) {
  if (auto s = require(out_json, "out_json"); s != FNLAB_OK) return s;
  return guarded([&] {
    if (count < 1) throw fnlab::ValidationError("count must be positive");
    if (m < 1 || m > 4) throw fnlab::ValidationError("m must lie in 1..4");
    fnlab::Json cases = fnlab::Json::array();
    bool all_zero = true;
    for (int i = 0; i < count; ++i) {
      fnlab::Rng rng(fnlab::derive_seed(seed, "jacobi3.random", static_cast<std::uint64_t>(i)));
      fnlab::Json e = defect_entry(fnlab::random_triangle(rng, m));
      all_zero = all_zero && e.value("zero", false);
      cases.push_back(std::move(e));
    }
    fnlab::Json j{{"mode", "random"}, {"seed", seed}, {"m", m}, {"cases", cases}, {"all_zero", all_zero}};
    *out_json = dup_string(j.dump(2));
    return all_zero ? FNLAB_OK : fail(FNLAB_PROPERTY_FAILED, "nonzero defect");
  });
}

}  // extern "C"
