#include "verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <thread>

#include "samples.hpp"

namespace fnlab {

// ---------------------------------------------------------------------------
// Configuration

const std::vector<std::string>& SuiteConfig::all_suites() {
  static const std::vector<std::string> s = {"weil", "microcalc", "jacobi", "conv", "prod", "brackets"};
  return s;
}

void SuiteConfig::validate() const {
  if (cases_per_property < 1) throw ValidationError("cases_per_property must be at least 1");
  if (m_max < 1 || m_max > 4) throw ValidationError("m_max must lie in 1..4");
  for (int a : {p_max, q_max, r_max}) {
    if (a < 0 || a > 3) throw ValidationError("arity maxima must lie in 0..3");
  }
  if (deg_max < 0 || deg_max > 4) throw ValidationError("deg_max must lie in 0..4");
  if (max_terms < 1 || max_terms > 8) throw ValidationError("max_terms must lie in 1..8");
  if (jobs < 0) throw ValidationError("jobs must be non-negative");
  for (const auto& s : suites) {
    if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end()) {
      throw ValidationError("unknown suite '" + s + "'");
    }
  }
  if (!mutation.empty() && mutation != "strong-diff-sign") throw ValidationError("unknown mutation '" + mutation + "'");
}

void SuiteConfig::make_heavy() {
  p_max = std::max(p_max, 2);
  q_max = std::max(q_max, 2);
  r_max = std::max(r_max, 2);
}

Json SuiteConfig::to_json() const {
  Json j{{"seed", seed},
         {"m_max", m_max},
         {"p_max", p_max},
         {"q_max", q_max},
         {"r_max", r_max},
         {"deg_max", deg_max},
         {"max_terms", max_terms},
         {"cases_per_property", cases_per_property},
         {"suites", suites.empty() ? all_suites() : suites}};
  if (!mutation.empty()) j["mutation"] = mutation;
  return j;
}

SuiteConfig SuiteConfig::from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  SuiteConfig c;
  auto get = [&](const char* key, int& dst) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer()) throw ValidationError(std::string(key) + " must be an integer");
    dst = j.at(key).get<int>();
  };
  for (const auto& [key, _] : j.items()) {
    static const std::vector<std::string> known = {"seed",  "m_max",     "p_max", "q_max", "r_max",
                                                   "deg_max", "max_terms", "cases_per_property",
                                                   "suites", "jobs",      "mutation", "heavy"};
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ValidationError("unknown config key '" + key + "'");
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ValidationError("seed must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  get("m_max", c.m_max);
  get("p_max", c.p_max);
  get("q_max", c.q_max);
  get("r_max", c.r_max);
  get("deg_max", c.deg_max);
  get("max_terms", c.max_terms);
  get("cases_per_property", c.cases_per_property);
  get("jobs", c.jobs);
  if (j.contains("suites")) {
    if (!j.at("suites").is_array()) throw ValidationError("suites must be a list");
    for (const auto& s : j.at("suites")) {
      if (!s.is_string()) throw ValidationError("suite names must be strings");
      c.suites.push_back(s.get<std::string>());
    }
  }
  if (j.contains("mutation")) c.mutation = j.at("mutation").get<std::string>();
  if (j.contains("heavy") && j.at("heavy").is_boolean() && j.at("heavy").get<bool>()) c.make_heavy();
  c.validate();
  return c;
}

bool Report::passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.passed(); });
}

Json Report::to_json(bool include_timing) const {
  Json props = Json::array();
  std::size_t failed = 0;
  for (const auto& p : properties) {
    Json fails = Json::array();
    for (const auto& f : p.failures) {
      fails.push_back(Json{{"case", f.case_index}, {"message", f.message}, {"witness", f.witness}});
    }
    Json e{{"name", p.name},     {"suite", p.suite},   {"statement", p.statement},
           {"cases", p.cases},   {"passed", p.passed()}, {"failure_count", p.failure_count},
           {"failures", fails}};
    if (include_timing) e["wall_ms"] = p.wall_ms;
    props.push_back(std::move(e));
    if (!p.passed()) ++failed;
  }
  return Json{{"schema", "fnlab-report/1"},
              {"seed", config.seed},
              {"config", config.to_json()},
              {"passed", passed()},
              {"summary", {{"properties", properties.size()}, {"failed", failed}}},
              {"properties", props}};
}

// ---------------------------------------------------------------------------
// Case plumbing

namespace {

struct CaseFailure {
  std::string message;
  Json witness;
};

struct Case {
  Rng rng;
  const SuiteConfig& cfg;
  std::size_t index;
  std::vector<int> arity;
  SampleShape shape;
  std::vector<CaseFailure> failures;

  int m() { return static_cast<int>(rng.range(1, cfg.m_max)); }
  void check(bool ok, const std::string& message, Json witness = Json::object()) {
    if (!ok) failures.push_back({message, std::move(witness)});
  }
};

using Combos = std::vector<std::vector<int>>;

struct PropertyDef {
  std::string name;
  std::string suite;
  std::string statement;
  std::function<Combos(const SuiteConfig&)> combos;
  std::function<void(Case&)> run;
  /// Fixed case count ignoring the configuration, or 0.
  int fixed_cases = 0;
};

Combos single(const SuiteConfig&) { return {{}}; }

Combos grid(std::vector<int> maxima) {
  Combos out{{}};
  for (int mx : maxima) {
    Combos next;
    for (const auto& c : out) {
      for (int a = 0; a <= mx; ++a) {
        auto d = c;
        d.push_back(a);
        next.push_back(std::move(d));
      }
    }
    out = std::move(next);
  }
  return out;
}

Combos pq(const SuiteConfig& c) { return grid({c.p_max, c.q_max}); }
Combos pqr(const SuiteConfig& c) { return grid({c.p_max, c.q_max, c.r_max}); }
Combos conv_pq(const SuiteConfig& c) { return grid({std::max(2, c.p_max), std::max(2, c.q_max)}); }
Combos arity3(const SuiteConfig& c) { return grid({std::max(3, c.p_max)}); }

Json form_witness(std::initializer_list<std::pair<const char*, const FormElem*>> forms) {
  Json j = Json::object();
  for (const auto& [k, f] : forms) j[k] = to_json(*f);
  return j;
}

Json kernel_witness(std::initializer_list<std::pair<const char*, const QPolyMap*>> maps) {
  Json j = Json::object();
  for (const auto& [k, f] : maps) j[k] = to_json(*f);
  return j;
}

// --- weil ------------------------------------------------------------------

SimplicialObject random_object(Rng& rng, bool allow_bounds) {
  const int n = static_cast<int>(rng.range(1, 4));
  std::set<std::vector<int>> p;
  const auto count = rng.range(0, 3);
  for (std::int64_t t = 0; t < count; ++t) {
    std::vector<int> seq;
    for (int i = 1; i <= n; ++i) {
      if (rng.coin()) seq.push_back(i);
    }
    if (seq.size() >= 2) p.insert(seq);
  }
  std::vector<int> bounds(static_cast<std::size_t>(n), 2);
  if (allow_bounds) {
    for (auto& b : bounds) b = rng.range(0, 3) == 0 ? 3 : 2;
  }
  return make_object(n, std::move(p), std::move(bounds));
}

WeilElement random_element(Rng& rng, const WeilAlgebraPtr& alg) {
  WeilElement x = weil_zero(alg);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.rational();
  return x;
}

InfMorphism random_morphism(Rng& rng, const SimplicialObject& source, int target_n) {
  auto alg = make_algebra(source);
  std::vector<WeilElement> images;
  for (int b = 0; b < target_n; ++b) {
    WeilElement x = weil_zero(alg);
    if (rng.coin()) {
      std::uint32_t mask = static_cast<std::uint32_t>(rng.range(1, (1 << source.n) - 1));
      int idx = alg->index_of_mask(mask);
      if (idx >= 0) x[static_cast<std::size_t>(idx)] = rng.nonzero_rational();
    }
    images.push_back(std::move(x));
  }
  return InfMorphism(source, cube(target_n), std::move(images));
}

void weil_cube_dimension(Case& c) {
  const int n = static_cast<int>(c.index % 7);
  auto alg = make_algebra(cube(n));
  c.check(alg->dim() == (std::size_t{1} << n), "dimension of the cube algebra is not 2^n", Json{{"n", n}});
}

void weil_named_dimensions(Case& c) {
  struct Named {
    SimplicialObject obj;
    std::size_t dim;
  };
  const std::vector<Named> named = {{first_order(2), 3},
                                    {make_object(3, {{1, 3}, {2, 3}}), 5},
                                    {make_object(4, {{2, 4}, {3, 4}}), 10},
                                    {make_object(4, {{1, 4}, {3, 4}}), 10},
                                    {make_object(4, {{1, 4}, {2, 4}}), 10},
                                    {make_object(1, {}, {3}), 3}};
  for (const auto& nm : named) {
    auto d = make_algebra(nm.obj)->dim();
    c.check(d == nm.dim, "unexpected dimension " + std::to_string(d), to_json(nm.obj));
  }
}

void weil_multiplication_laws(Case& c) {
  auto obj = random_object(c.rng, true);
  auto alg = make_algebra(obj);
  auto a = random_element(c.rng, alg);
  auto b = random_element(c.rng, alg);
  auto d = random_element(c.rng, alg);
  Json w{{"object", to_json(obj)}, {"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(d)}};
  c.check(a * b == b * a, "multiplication is not commutative", w);
  c.check((a * b) * d == a * (b * d), "multiplication is not associative", w);
  c.check(a * (b + d) == a * b + a * d, "multiplication does not distribute", w);
  c.check(a * weil_unit(alg) == a, "unit is not neutral", w);
}

void weil_oplus_associative(Case& c) {
  auto a = random_object(c.rng, false);
  auto b = random_object(c.rng, false);
  auto d = random_object(c.rng, false);
  c.check(oplus(oplus(a, b), d) == oplus(a, oplus(b, d)), "oplus is not associative",
          Json{{"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(d)}});
}

void weil_restriction_homomorphism(Case& c) {
  auto src = random_object(c.rng, false);
  auto mid_n = static_cast<int>(c.rng.range(1, 3));
  auto f = random_morphism(c.rng, src, mid_n);
  auto g = random_morphism(c.rng, cube(mid_n), static_cast<int>(c.rng.range(1, 3)));
  auto mid = make_algebra(cube(mid_n));
  auto x = random_element(c.rng, mid);
  auto y = random_element(c.rng, mid);
  Json w{{"f", to_json(f)}, {"g", to_json(g)}, {"x", to_json(x)}, {"y", to_json(y)}};
  c.check(f.pull(x * y) == f.pull(x) * f.pull(y), "restriction is not multiplicative", w);
  c.check(f.pull(x + y) == f.pull(x) + f.pull(y), "restriction is not additive", w);
  c.check(f.pull(weil_unit(mid)) == weil_unit(f.source_algebra()), "restriction is not unital", w);
  auto z = random_element(c.rng, g.target_algebra());
  c.check(compose_morphisms(f, g).pull(z) == f.pull(g.pull(z)), "restriction is not functorial", w);
  c.check(compose_morphisms(InfMorphism::identity(src), f) == f, "identity is not neutral", w);
}

void weil_eval_composition(Case& c) {
  const int m = c.m();
  auto g = c.rng.poly_map(static_cast<std::size_t>(m), static_cast<std::size_t>(m), c.shape.deg_max, c.shape.max_terms);
  auto f = c.rng.poly_map(static_cast<std::size_t>(m), static_cast<std::size_t>(m), c.shape.deg_max, c.shape.max_terms);
  auto x = random_point(c.rng, m);
  c.check(eval(compose(f, g), x) == eval(f, eval(g, x)), "evaluation does not commute with composition",
          kernel_witness({{"f", &f}, {"g", &g}}));
  c.check(compose(f, QPolyMap::identity(static_cast<std::size_t>(m))) == f, "identity is not neutral for composition",
          kernel_witness({{"f", &f}}));
}

// --- microcalc ---------------------------------------------------------------

MicroPoint corrupted_strong_diff(const MicroPoint& g1, const MicroPoint& g2) {
  std::vector<WeilElement> coords = g2.coords();
  const auto corner = static_cast<std::size_t>(g2.algebra()->index_of_mask(3));
  for (auto& x : coords) x[corner] = -x[corner];
  return strong_diff(g1, MicroPoint(g2.algebra(), std::move(coords)));
}

void micro_antisymmetry(Case& c) {
  const int m = static_cast<int>(c.rng.range(1, std::max(3, c.cfg.m_max)));
  auto [g1, g2] = random_compatible_pair(c.rng, SquareKind::Corner, m);
  auto diff = c.cfg.mutation == "strong-diff-sign" ? corrupted_strong_diff : strong_diff;
  auto a = diff(g1, g2);
  auto b = diff(g2, g1);
  bool ok = true;
  for (int j = 0; j < m; ++j) ok = ok && sgn(a.coord(j)[1] + b.coord(j)[1]) == 0;
  c.check(ok, "principal parts of the two strong differences do not cancel",
          Json{{"g1", to_json(g1)}, {"g2", to_json(g2)}, {"forward", to_json(a)}, {"backward", to_json(b)}});
}

SquareKind kind_of(std::size_t index) { return static_cast<SquareKind>(index % 4); }

void micro_round_trip(Case& c) {
  const auto kind = kind_of(c.index);
  auto [g1, g2] = random_compatible_pair(c.rng, kind, c.m());
  auto apex = amalgamate(g1, g2, kind);
  const auto& sq = pullback_square(kind);
  c.check(restrict(apex, sq.upper) == g1 && restrict(apex, sq.lower) == g2,
          "amalgamation does not restrict back to its legs",
          Json{{"square", sq.apex.name()}, {"g1", to_json(g1)}, {"g2", to_json(g2)}, {"apex", to_json(apex)}});
}

void micro_unique(Case& c) {
  const auto kind = kind_of(c.index);
  auto [g1, g2] = random_compatible_pair(c.rng, kind, c.m());
  const std::size_t dim = make_algebra(pullback_square(kind).apex)->dim();
  std::vector<std::size_t> order(dim);
  for (std::size_t i = 0; i < dim; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), c.rng.engine());
  auto a = amalgamate(g1, g2, kind);
  auto b = amalgamate(g1, g2, kind, order);
  c.check(a == b, "solving in a permuted order changes the amalgamation",
          Json{{"g1", to_json(g1)}, {"g2", to_json(g2)}, {"order", order}});
}

MicroPoint add_points(const MicroPoint& a, const MicroPoint& b) {
  std::vector<WeilElement> coords;
  for (int j = 0; j < a.m(); ++j) coords.push_back(a.coord(j) + b.coord(j));
  return MicroPoint(a.algebra(), std::move(coords));
}

void micro_linear(Case& c) {
  const int m = c.m();
  auto [a1, a2] = random_compatible_pair(c.rng, SquareKind::Corner, m);
  auto [b1, b2] = random_compatible_pair(c.rng, SquareKind::Corner, m);
  auto sum = strong_diff(add_points(a1, b1), add_points(a2, b2));
  auto parts = add_points(strong_diff(a1, a2), strong_diff(b1, b2));
  Json w{{"a1", to_json(a1)}, {"a2", to_json(a2)}, {"b1", to_json(b1)}, {"b2", to_json(b2)}};
  c.check(sum == parts, "strong difference is not linear in the pair", w);
  auto shift = random_micropoint(c.rng, cube(2), m);
  std::vector<WeilElement> base;
  for (int j = 0; j < m; ++j) {
    WeilElement e = weil_zero(shift.algebra());
    e[0] = shift.coord(j)[0];
    base.push_back(std::move(e));
  }
  MicroPoint t(shift.algebra(), base);
  auto moved = strong_diff(add_points(a1, t), add_points(a2, t));
  auto plain = strong_diff(a1, a2);
  bool ok = true;
  for (int j = 0; j < m; ++j) ok = ok && moved.coord(j)[1] == plain.coord(j)[1];
  c.check(ok, "translating both squares changes the principal part", w);
}

void micro_incompatible(Case& c) {
  const auto kind = kind_of(c.index);
  auto [g1, g2] = random_compatible_pair(c.rng, kind, c.m());
  std::vector<WeilElement> coords = g2.coords();
  coords[0][0] += 1;
  MicroPoint bad(g2.algebra(), std::move(coords));
  bool rejected = false;
  try {
    amalgamate(g1, bad, kind);
  } catch (const PreconditionError&) {
    rejected = true;
  }
  c.check(rejected, "incompatible legs were amalgamated", Json{{"g1", to_json(g1)}, {"g2", to_json(bad)}});
}

// --- jacobi ------------------------------------------------------------------

bool defect_is_zero(const MicroPoint& d) {
  for (int j = 0; j < d.m(); ++j) {
    if (sgn(d.coord(j)[1]) != 0) return false;
  }
  return true;
}

Json triangle_witness(const TriangleConfig& t) {
  Json j = Json::object();
  for (std::size_t i = 0; i < 6; ++i) j[TriangleConfig::labels()[i]] = to_json(t.xi[i]);
  return j;
}

void jacobi_fields(Case& c) {
  const int m = static_cast<int>(c.rng.range(1, std::min(2, c.cfg.m_max)));
  auto x = random_vector_field(c.rng, m, c.shape);
  auto y = random_vector_field(c.rng, m, c.shape);
  auto z = random_vector_field(c.rng, m, c.shape);
  auto field = triangle_from_vector_fields(x, y, z);
  for (int k = 0; k < 3; ++k) {
    auto pt = random_point(c.rng, m);
    auto t = field.at(pt);
    auto bad = triangle_violations(t);
    Json w{{"X", to_json(x)}, {"Y", to_json(y)}, {"Z", to_json(z)}};
    if (!bad.empty()) {
      c.check(false, "configuration from vector fields is incompatible: " + bad.front(), w);
      continue;
    }
    auto d = jacobi3_defect(t);
    w["defect"] = to_json(d);
    c.check(defect_is_zero(d), "three-term sum does not vanish", w);
  }
}

void jacobi_random(Case& c) {
  auto t = random_triangle(c.rng, c.m());
  auto bad = triangle_violations(t);
  if (!bad.empty()) {
    c.check(false, "generated configuration is incompatible: " + bad.front(), triangle_witness(t));
    return;
  }
  auto d = jacobi3_defect(t);
  Json w = triangle_witness(t);
  w["defect"] = to_json(d);
  c.check(defect_is_zero(d), "three-term sum does not vanish", w);
}

void jacobi_faces_suffice(Case& c) {
  for (int m = 1; m <= c.cfg.m_max; ++m) {
    auto tc = triangle_constraints(m);
    c.check(tc.extra_rank == 0, "face agreements do not imply the D(2) conditions",
            Json{{"m", m}, {"extra_rank", tc.extra_rank}});
  }
}

void jacobi_incompatible(Case& c) {
  auto t = random_triangle(c.rng, c.m());
  // Change a coefficient that the face agreements tie together.
  auto& x = t.xi[c.index % 6];
  std::vector<WeilElement> coords = x.coords();
  coords[0][static_cast<std::size_t>(x.algebra()->index_of_mask(1 + (c.index % 3)))] += 1;
  x = MicroPoint(x.algebra(), std::move(coords));
  bool rejected = false;
  try {
    jacobi3_defect(t);
  } catch (const PreconditionError&) {
    rejected = true;
  }
  c.check(rejected && !triangle_violations(t).empty(), "incompatible configuration was accepted", triangle_witness(t));
}

// --- conv ------------------------------------------------------------------

void conv_shuffle(Case& c) {
  const int p = c.arity[0], q = c.arity[1], m = c.m();
  auto f = random_kernel(c.rng, p, m, c.shape);
  auto g = random_kernel(c.rng, q, m, c.shape);
  auto lhs = perm_act(conv_under(f, p, g, q, m), p + q, m, shuffle_sigma(p, q));
  auto rhs = conv_over(g, q, f, p, m);
  c.check(lhs == rhs, "relabelled under-convolution differs from the over-convolution",
          kernel_witness({{"f", &f}, {"g", &g}}));
}

void conv_associative(Case& c) {
  const int p = c.arity[0], q = c.arity[1], r = c.arity[2], m = c.m();
  auto f = random_kernel(c.rng, p, m, c.shape);
  auto g = random_kernel(c.rng, q, m, c.shape);
  auto h = random_kernel(c.rng, r, m, c.shape);
  Json w = kernel_witness({{"f", &f}, {"g", &g}, {"h", &h}});
  c.check(conv_under(conv_under(f, p, g, q, m), p + q, h, r, m) == conv_under(f, p, conv_under(g, q, h, r, m), q + r, m),
          "under-convolution is not associative", w);
  c.check(conv_over(conv_over(f, p, g, q, m), p + q, h, r, m) == conv_over(f, p, conv_over(g, q, h, r, m), q + r, m),
          "over-convolution is not associative", w);
}

void conv_projection(Case& c) {
  const int p = c.arity[0], q = c.arity[1], m = c.m();
  auto g = random_kernel(c.rng, q, m, c.shape);
  auto f = random_kernel(c.rng, p, m, c.shape);
  auto pi_p = projection_kernel(p, m);
  auto pi_q = projection_kernel(q, m);
  Json w = kernel_witness({{"f", &f}, {"g", &g}});
  c.check(conv_under(pi_p, p, g, q, m) == conv_over(pi_p, p, g, q, m),
          "projection on the left does not make the two convolutions agree", w);
  c.check(conv_under(f, p, pi_q, q, m) == conv_over(f, p, pi_q, q, m),
          "projection on the right does not make the two convolutions agree", w);
}

bool base_preserving(const QPolyMap& f, int p, int m) {
  std::vector<QPoly> args;
  const std::size_t n = kernel_vars(p, m);
  for (std::size_t v = 0; v < n; ++v) {
    args.push_back(v < static_cast<std::size_t>(m) ? QPoly::variable(n, v, Rational(1)) : QPoly(n));
  }
  return eval<QPoly>(f, args, QPoly::constant(n, Rational(1))) == projection_kernel(p, m).components;
}

void conv_base_closed(Case& c) {
  const int p = c.arity[0], q = c.arity[1], m = c.m();
  auto f = random_base_preserving_kernel(c.rng, p, m, c.shape);
  auto g = random_base_preserving_kernel(c.rng, q, m, c.shape);
  Json w = kernel_witness({{"f", &f}, {"g", &g}});
  c.check(base_preserving(f, p, m) && base_preserving(g, q, m), "generator produced a kernel moving the base", w);
  c.check(base_preserving(conv_under(f, p, g, q, m), p + q, m), "under-convolution moves the base", w);
  c.check(base_preserving(conv_over(f, p, g, q, m), p + q, m), "over-convolution moves the base", w);
}

// --- prod --------------------------------------------------------------------

FormElem random_expansion(Rng& rng, int p, int m, const SampleShape& shape) {
  if (rng.coin()) return FormElem(p, 0, m, {random_kernel(rng, p, m, shape)});
  return random_form(rng, FormClass::Omega1, p, m, shape);
}

void prod_associative(Case& c) {
  const int p = c.arity[0], q = c.arity[1], r = c.arity[2], m = c.m();
  auto x = random_expansion(c.rng, p, m, c.shape);
  auto y = random_expansion(c.rng, q, m, c.shape);
  auto z = random_expansion(c.rng, r, m, c.shape);
  Json w = form_witness({{"x", &x}, {"y", &y}, {"z", &z}});
  c.check(prod_under(prod_under(x, y), z).same_data(prod_under(x, prod_under(y, z))), "under-product is not associative", w);
  c.check(prod_over(prod_over(x, y), z).same_data(prod_over(x, prod_over(y, z))), "over-product is not associative", w);
}

void prod_low_order(Case& c) {
  const int p = c.arity[0], q = c.arity[1], m = c.m();
  auto x = random_form(c.rng, FormClass::Omega1, p, m, c.shape);
  auto y = random_form(c.rng, FormClass::Omega1, q, m, c.shape);
  auto a = prod_under(x, y);
  auto b = prod_over(x, y);
  bool ok = a.coeff(0) == b.coeff(0) && a.coeff(1) == b.coeff(1) && a.coeff(2) == b.coeff(2);
  c.check(ok, "the two products differ below the corner", form_witness({{"x", &x}, {"y", &y}}));
}

// --- brackets ----------------------------------------------------------------

using Bracket = FormElem (*)(const FormElem&, const FormElem&);

std::string nonzero_message(const char* what, const FormElem& residual) {
  for (std::size_t j = 0; j < residual.principal().components.size(); ++j) {
    if (!residual.principal().components[j].is_zero()) {
      return std::string(what) + " leaves " + to_string(residual.principal().components[j]) + " in component " +
             std::to_string(j + 1);
    }
  }
  return what;
}

void relabelled_antisymmetry(Case& c, FormClass cls, Bracket br) {
  const int p = c.arity[0], q = c.arity[1], m = c.m();
  auto x = random_form(c.rng, cls, p, m, c.shape);
  auto y = random_form(c.rng, cls, q, m, c.shape);
  auto sum = add_tangent(br(x, y), perm_act(br(y, x), shuffle_sigma(q, p)));
  c.check(principal_is_zero(sum), nonzero_message("antisymmetry", sum), form_witness({{"x", &x}, {"y", &y}}));
}

void relabelled_jacobi(Case& c, FormClass cls, Bracket br) {
  const int p = c.arity[0], q = c.arity[1], r = c.arity[2], m = c.m();
  auto x = random_form(c.rng, cls, p, m, c.shape);
  auto y = random_form(c.rng, cls, q, m, c.shape);
  auto z = random_form(c.rng, cls, r, m, c.shape);
  auto t1 = br(x, br(y, z));
  auto t2 = perm_act(br(y, br(z, x)), shuffle_sigma(q + r, p));
  auto t3 = perm_act(br(z, br(x, y)), shuffle_sigma(r, p + q));
  auto sum = add_tangent(add_tangent(t1, t2), t3);
  c.check(principal_is_zero(sum), nonzero_message("cyclic sum", sum), form_witness({{"x", &x}, {"y", &y}, {"z", &z}}));
}

Rational parity(int e) { return Rational(e % 2 == 0 ? 1 : -1); }

void graded_antisymmetry(Case& c, FormClass cls, Bracket br) {
  const int p = c.arity[0], q = c.arity[1], m = c.m();
  auto x = random_form(c.rng, cls, p, m, c.shape);
  auto y = random_form(c.rng, cls, q, m, c.shape);
  auto sum = add_tangent(br(x, y), scale_tangent(br(y, x), parity(p * q)));
  c.check(principal_is_zero(sum), nonzero_message("graded antisymmetry", sum), form_witness({{"x", &x}, {"y", &y}}));
}

void graded_jacobi(Case& c, FormClass cls, Bracket br) {
  const int p = c.arity[0], q = c.arity[1], r = c.arity[2], m = c.m();
  auto x = random_form(c.rng, cls, p, m, c.shape);
  auto y = random_form(c.rng, cls, q, m, c.shape);
  auto z = random_form(c.rng, cls, r, m, c.shape);
  auto t1 = br(x, br(y, z));
  auto t2 = scale_tangent(br(y, br(z, x)), parity(p * (q + r)));
  auto t3 = scale_tangent(br(z, br(x, y)), parity(r * (p + q)));
  auto sum = add_tangent(add_tangent(t1, t2), t3);
  c.check(principal_is_zero(sum), nonzero_message("graded cyclic sum", sum),
          form_witness({{"x", &x}, {"y", &y}, {"z", &z}}));
}

void closure(Case& c, FormClass cls, Bracket br) {
  const int p = c.arity[0], q = c.arity[1], m = c.m();
  auto x = random_form(c.rng, cls, p, m, c.shape);
  auto y = random_form(c.rng, cls, q, m, c.shape);
  auto b = br(x, y);
  auto why = class_failure(b, cls);
  c.check(why.empty(), "bracket output fails " + why, form_witness({{"x", &x}, {"y", &y}}));
}

void levels_agree(Case& c) {
  const int m = c.m();
  auto x = random_form(c.rng, FormClass::Omega1, 0, m, c.shape);
  auto y = random_form(c.rng, FormClass::Omega1, 0, m, c.shape);
  auto l1 = bracket_L1(x, y);
  bool ok = bracket_L12(x, y).same_data(l1) && bracket_FN13(x, y).same_data(l1) && bracket_FN123(x, y).same_data(l1);
  c.check(ok, "bracket levels disagree on vector fields", form_witness({{"x", &x}, {"y", &y}}));
}

void antisymmetrizer_equivariance(Case& c) {
  const int p = c.arity[0], m = c.m();
  auto x = random_form(c.rng, FormClass::Omega1, p, m, c.shape);
  auto ax = antisymmetrize(x);
  for (const auto& sigma : Permutation::all(p)) {
    auto signed_ax = scale_tangent(ax, Rational(sigma.sign()));
    c.check(antisymmetrize(perm_act(x, sigma)).same_data(signed_ax), "antisymmetrizer after relabelling is not signed",
            form_witness({{"x", &x}}));
    c.check(perm_act(ax, sigma).same_data(signed_ax), "relabelled antisymmetrization is not signed",
            form_witness({{"x", &x}}));
  }
}

void permutation_law(Case& c) {
  const int p = c.arity[0], m = c.m();
  auto x = random_form(c.rng, FormClass::Omega1, p, m, c.shape);
  auto perms = Permutation::all(p);
  const auto& s = perms[static_cast<std::size_t>(c.rng.range(0, static_cast<std::int64_t>(perms.size()) - 1))];
  const auto& t = perms[static_cast<std::size_t>(c.rng.range(0, static_cast<std::int64_t>(perms.size()) - 1))];
  c.check(perm_act(perm_act(x, s), t) == perm_act(x, t * s), "relabelling twice differs from relabelling by the product",
          form_witness({{"x", &x}}));
  c.check(perm_act(x, Permutation::identity(p)) == x, "identity relabelling changes the form", form_witness({{"x", &x}}));
}

void transpose_round_trip(Case& c) {
  const int p = c.arity[0], m = c.m();
  auto x = random_form(c.rng, FormClass::Omega1, p, m, c.shape);
  c.check(transpose_views(transpose_views(x)) == x && transpose_views(x).same_data(x),
          "encoding switch is not a relabelling", form_witness({{"x", &x}}));
}

// ---------------------------------------------------------------------------

const std::vector<PropertyDef>& registry() {
  using FC = FormClass;
  static const std::vector<PropertyDef> defs = {
      {"weil.cube_dimension", "weil", "the cube algebra on n generators has dimension 2^n", single, weil_cube_dimension, 7},
      {"weil.named_dimensions", "weil", "named objects have their expected algebra dimensions", single,
       weil_named_dimensions, 1},
      {"weil.multiplication_laws", "weil", "Weil multiplication is commutative, associative and unital", single,
       weil_multiplication_laws},
      {"weil.oplus_associative", "weil", "the direct sum of infinitesimal objects is associative", single,
       weil_oplus_associative},
      {"weil.restriction_homomorphism", "weil", "restriction along a morphism is a unital algebra map and functorial",
       single, weil_restriction_homomorphism},
      {"weil.eval_composition", "weil", "evaluation commutes with polynomial composition", single, weil_eval_composition},
      {"microcalc.strong_diff_antisymmetry", "microcalc", "swapping the two microsquares negates the strong difference",
       single, micro_antisymmetry},
      {"microcalc.pullback_round_trip", "microcalc", "each amalgamation restricts back to both legs", single,
       micro_round_trip},
      {"microcalc.pullback_unique", "microcalc", "the amalgamation does not depend on the elimination order", single,
       micro_unique},
      {"microcalc.strong_diff_linear", "microcalc", "the strong difference is linear and translation invariant", single,
       micro_linear},
      {"microcalc.incompatible_rejected", "microcalc", "legs disagreeing on the shared object are rejected", single,
       micro_incompatible},
      {"jacobi.vector_field_triangles", "jacobi", "flows of three vector fields give a vanishing three-term sum", single,
       jacobi_fields},
      {"jacobi.random_triangles", "jacobi", "compatible random configurations give a vanishing three-term sum", single,
       jacobi_random},
      {"jacobi.face_agreement_suffices", "jacobi", "face agreements imply agreement of the intermediate squares", single,
       jacobi_faces_suffice, 1},
      {"jacobi.incompatible_rejected", "jacobi", "configurations breaking a face agreement are rejected", single,
       jacobi_incompatible},
      {"conv.shuffle_relation", "conv", "relabelling the under-convolution by the block shuffle gives the swapped over-convolution",
       conv_pq, conv_shuffle},
      {"conv.associative", "conv", "both convolutions are associative", pqr, conv_associative},
      {"conv.projection_commutes", "conv", "with the base projection as either factor both convolutions agree", conv_pq,
       conv_projection},
      {"conv.base_preserving_closed", "conv", "convolutions of base-preserving kernels preserve the base", pq,
       conv_base_closed},
      {"prod.associative", "prod", "both expanded products are associative", pqr, prod_associative},
      {"prod.low_order_agreement", "prod", "the two products agree on the constant and linear expansion terms", pq,
       prod_low_order},
      {"brackets.l1_antisymmetry", "brackets", "the bracket plus its relabelled swap vanishes", pq,
       [](Case& c) { relabelled_antisymmetry(c, FC::Omega1, bracket_L1); }},
      {"brackets.l1_jacobi", "brackets", "the relabelled cyclic sum of nested brackets vanishes", pqr,
       [](Case& c) { relabelled_jacobi(c, FC::Omega1, bracket_L1); }},
      {"brackets.l12_antisymmetry", "brackets", "multilinear bracket plus its relabelled swap vanishes", pq,
       [](Case& c) { relabelled_antisymmetry(c, FC::Omega12, bracket_L12); }},
      {"brackets.l12_jacobi", "brackets", "relabelled cyclic sum of nested multilinear brackets vanishes", pqr,
       [](Case& c) { relabelled_jacobi(c, FC::Omega12, bracket_L12); }},
      {"brackets.l12_closure", "brackets", "the bracket of multilinear forms is multilinear", pq,
       [](Case& c) { closure(c, FC::Omega12, bracket_L12); }},
      {"brackets.fn13_antisymmetry", "brackets", "alternating bracket is graded antisymmetric", pq,
       [](Case& c) { graded_antisymmetry(c, FC::Omega13, bracket_FN13); }},
      {"brackets.fn13_jacobi", "brackets", "alternating bracket satisfies the graded Jacobi identity", pqr,
       [](Case& c) { graded_jacobi(c, FC::Omega13, bracket_FN13); }},
      {"brackets.fn13_closure", "brackets", "the bracket of alternating forms is alternating", pq,
       [](Case& c) { closure(c, FC::Omega13, bracket_FN13); }},
      {"brackets.fn123_antisymmetry", "brackets", "alternating multilinear bracket is graded antisymmetric", pq,
       [](Case& c) { graded_antisymmetry(c, FC::Omega123, bracket_FN123); }},
      {"brackets.fn123_jacobi", "brackets", "alternating multilinear bracket satisfies the graded Jacobi identity", pqr,
       [](Case& c) { graded_jacobi(c, FC::Omega123, bracket_FN123); }},
      {"brackets.fn123_closure", "brackets", "the bracket of alternating multilinear forms stays in the class", pq,
       [](Case& c) { closure(c, FC::Omega123, bracket_FN123); }},
      {"brackets.vector_field_levels_agree", "brackets", "all bracket levels coincide on vector fields", single,
       levels_agree},
      {"brackets.antisymmetrizer_equivariance", "brackets", "antisymmetrization intertwines relabelling with its sign",
       arity3, antisymmetrizer_equivariance},
      {"brackets.permutation_action_law", "brackets", "relabelling by s then t equals relabelling by t after s", arity3,
       permutation_law},
      {"brackets.transpose_round_trip", "brackets", "switching encodings twice is the identity", arity3,
       transpose_round_trip},
  };
  return defs;
}

const PropertyDef& find_property(const std::string& name) {
  for (const auto& d : registry()) {
    if (d.name == name) return d;
  }
  throw ValidationError("unknown property '" + name + "'");
}

std::string describe_exception(const std::exception& e) { return std::string("exception: ") + e.what(); }

}  // namespace

std::vector<std::string> property_names() {
  std::vector<std::string> out;
  for (const auto& d : registry()) out.push_back(d.name);
  return out;
}

PropertyResult run_property(const std::string& name, const SuiteConfig& config, int cases) {
  config.validate();
  const PropertyDef& def = find_property(name);
  const Combos combos = def.combos(config);
  const std::size_t per = def.fixed_cases > 0 && cases <= 0
                              ? static_cast<std::size_t>(def.fixed_cases)
                              : static_cast<std::size_t>(cases > 0 ? cases : config.cases_per_property);
  const std::size_t total = per * combos.size();
  std::vector<std::vector<CaseFailure>> results(total);

  const auto start = std::chrono::steady_clock::now();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      Case c{Rng(derive_seed(config.seed, def.name, i)), config, i, combos[i / per],
             SampleShape{config.deg_max, config.max_terms}, {}};
      try {
        def.run(c);
      } catch (const std::exception& e) {
        c.failures.push_back({describe_exception(e), Json::object()});
      }
      results[i] = std::move(c.failures);
    }
  };
  unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs) : std::thread::hardware_concurrency();
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  PropertyResult r{def.name, def.suite, def.statement, total, 0, {}, 0};
  for (std::size_t i = 0; i < total; ++i) {
    for (auto& f : results[i]) {
      ++r.failure_count;
      if (r.failures.size() < 3) {
        Json w = std::move(f.witness);
        if (!combos[i / per].empty()) w["arities"] = combos[i / per];
        r.failures.push_back({i, std::move(f.message), std::move(w)});
      }
    }
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Report run_suite(const SuiteConfig& config) {
  config.validate();
  Report report{config, {}};
  const auto& wanted = config.suites.empty() ? SuiteConfig::all_suites() : config.suites;
  for (const auto& def : registry()) {
    if (std::find(wanted.begin(), wanted.end(), def.suite) == wanted.end()) continue;
    report.properties.push_back(run_property(def.name, config));
  }
  return report;
}

}  // namespace fnlab
