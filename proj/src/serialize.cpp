#include "serialize.hpp"

namespace fnlab {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int get_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ValidationError(std::string(what) + " must be an integer");
  return j.get<int>();
}

Rational get_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ValidationError("coefficient must be a \"num/den\" string");
  return parse_rational(j.get<std::string>());
}

std::vector<int> get_int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be a list of integers");
  std::vector<int> v;
  for (const auto& e : j) v.push_back(get_int(e, what));
  return v;
}

std::string index_key(const std::vector<int>& exps) {
  std::string s = "[";
  bool first = true;
  for (std::size_t g = 0; g < exps.size(); ++g) {
    for (int k = 0; k < exps[g]; ++k) {
      if (!first) s += ",";
      first = false;
      s += std::to_string(g + 1);
    }
  }
  return s + "]";
}

std::vector<int> parse_index_key(const std::string& key, int n) {
  Json list = parse_json(key);
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  for (int i : get_int_list(list, "index list")) {
    if (i < 1 || i > n) throw ValidationError("index " + std::to_string(i) + " out of range in key " + key);
    ++e[static_cast<std::size_t>(i - 1)];
  }
  return e;
}

std::string mask_key(std::uint32_t mask) {
  std::vector<int> e;
  for (int g = 0; g < 32 && (mask >> g) != 0; ++g) e.push_back(static_cast<int>((mask >> g) & 1U));
  return index_key(e);
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

Json to_json(const SimplicialObject& obj) {
  Json p = Json::array();
  for (const auto& seq : obj.p_set) p.push_back(seq);
  Json j{{"n", obj.n}, {"p", p}};
  if (!obj.is_simplicial()) j["bounds"] = obj.power_bounds;
  return j;
}

SimplicialObject object_from_json(const Json& j) {
  int n = get_int(field(j, "n"), "n");
  std::set<std::vector<int>> p;
  if (j.contains("p")) {
    if (!j.at("p").is_array()) throw ValidationError("p must be a list of index sequences");
    for (const auto& seq : j.at("p")) p.insert(get_int_list(seq, "p-set sequence"));
  }
  std::vector<int> bounds;
  if (j.contains("bounds")) bounds = get_int_list(j.at("bounds"), "bounds");
  if (n < 0 || n > 16) throw ValidationError("n must lie in 0..16");
  return make_object(n, std::move(p), std::move(bounds));
}

Json to_json(const WeilElement& x) {
  Json terms = Json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) != 0) terms.push_back(Json::array({format_rational(x[i]), x.algebra()->exponent(i)}));
  }
  return terms;
}

Json to_json(const InfMorphism& f) {
  Json subst = Json::array();
  for (const auto& x : f.substitution()) subst.push_back(to_json(x));
  return Json{{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"subst", subst}};
}

InfMorphism morphism_from_json(const Json& j) {
  auto src = object_from_json(field(j, "source"));
  auto tgt = object_from_json(field(j, "target"));
  const Json& s = field(j, "subst");
  if (!s.is_array()) throw ValidationError("subst must be a list of term lists");
  std::vector<std::vector<InfMorphism::Term>> subst;
  for (const auto& poly : s) {
    if (!poly.is_array()) throw ValidationError("each substitution entry must be a list of terms");
    std::vector<InfMorphism::Term> terms;
    for (const auto& t : poly) {
      if (!t.is_array() || t.size() != 2) throw ValidationError("term must be [coefficient, exponents]");
      terms.emplace_back(get_rational(t[0]), get_int_list(t[1], "exponent vector"));
    }
    subst.push_back(std::move(terms));
  }
  return InfMorphism::from_terms(std::move(src), std::move(tgt), subst);
}

Json to_json(const QPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back(Json{{"c", format_rational(c)}, {"e", m}});
  return terms;
}

QPoly poly_from_json(const Json& j, std::size_t nvars) {
  if (!j.is_array()) throw ValidationError("polynomial must be a list of terms");
  std::vector<QPoly::Term> terms;
  for (const auto& t : j) {
    auto e = get_int_list(field(t, "e"), "exponent vector");
    if (e.size() != nvars) {
      throw ValidationError("exponent vector has " + std::to_string(e.size()) + " entries, expected " +
                            std::to_string(nvars));
    }
    Monomial m;
    for (int x : e) {
      if (x < 0 || x > 0xFFFF) throw ValidationError("exponent out of range");
      m.push_back(static_cast<std::uint16_t>(x));
    }
    terms.emplace_back(std::move(m), get_rational(field(t, "c")));
  }
  return QPoly::from_terms(nvars, std::move(terms));
}

Json to_json(const QPolyMap& f) {
  Json comps = Json::array();
  for (const auto& c : f.components) comps.push_back(to_json(c));
  return Json{{"in", f.in_dim}, {"out", f.out_dim}, {"components", comps}};
}

QPolyMap polymap_from_json(const Json& j) {
  int in = get_int(field(j, "in"), "in");
  int out = get_int(field(j, "out"), "out");
  if (in < 0 || out < 0) throw ValidationError("dimensions must be non-negative");
  const Json& comps = field(j, "components");
  if (!comps.is_array() || comps.size() != static_cast<std::size_t>(out)) {
    throw ValidationError("components must list exactly " + std::to_string(out) + " polynomials");
  }
  std::vector<QPoly> c;
  for (const auto& p : comps) c.push_back(poly_from_json(p, static_cast<std::size_t>(in)));
  return QPolyMap(static_cast<std::size_t>(in), std::move(c));
}

Json to_json(const MicroPoint& x) {
  Json coeffs = Json::object();
  for (std::size_t b = 0; b < x.algebra()->dim(); ++b) {
    Json v = Json::array();
    for (const auto& q : x.coefficient(b)) v.push_back(format_rational(q));
    coeffs[index_key(x.algebra()->exponent(b))] = v;
  }
  return Json{{"object", to_json(x.object())}, {"m", x.m()}, {"coeffs", coeffs}};
}

MicroPoint micropoint_from_json(const Json& j) {
  auto alg = make_algebra(object_from_json(field(j, "object")));
  int m = get_int(field(j, "m"), "m");
  if (m < 1) throw ValidationError("m must be positive");
  std::vector<std::vector<Rational>> c(alg->dim(), std::vector<Rational>(static_cast<std::size_t>(m)));
  const Json& coeffs = field(j, "coeffs");
  if (!coeffs.is_object()) throw ValidationError("coeffs must map index lists to vectors");
  for (const auto& [key, val] : coeffs.items()) {
    int idx = alg->index_of(parse_index_key(key, alg->generators()));
    if (idx < 0) throw ValidationError("monomial " + key + " vanishes in " + alg->object().name());
    if (!val.is_array() || val.size() != static_cast<std::size_t>(m)) {
      throw ValidationError("coefficient " + key + " must have " + std::to_string(m) + " entries");
    }
    for (std::size_t i = 0; i < val.size(); ++i) c[static_cast<std::size_t>(idx)][i] = get_rational(val[i]);
  }
  return MicroPoint::from_coefficients(alg, c);
}

Json to_json(const FormElem& x) {
  Json vars = Json::array();
  for (std::uint32_t s = 0; s < (1U << x.arity()); ++s) {
    for (int jj = 0; jj < x.dim(); ++jj) vars.push_back(Json{{"S", parse_json(mask_key(s))}, {"j", jj + 1}});
  }
  Json coeffs = Json::object();
  const QPolyMap pi = projection_kernel(x.arity(), x.dim());
  for (std::uint32_t u = 0; u < x.coeffs().size(); ++u) {
    const auto& k = x.coeff(u);
    if (u == 0 && k == pi) {
      coeffs[mask_key(u)] = "pi";
    } else if (!k.is_zero()) {
      coeffs[mask_key(u)] = to_json(k);
    }
  }
  return Json{{"p", x.arity()},
              {"k", x.expansion()},
              {"m", x.dim()},
              {"class", class_name(x.tag())},
              {"encoding", x.encoding() == Encoding::Under ? "under" : "over"},
              {"vars", vars},
              {"coeffs", coeffs}};
}

FormElem form_from_json(const Json& j) {
  int p = get_int(field(j, "p"), "p");
  int k = j.contains("k") ? get_int(j.at("k"), "k") : 1;
  int m = get_int(field(j, "m"), "m");
  if (p < 0 || p > 8 || k < 0 || k > 4 || m < 1 || m > 8) throw ValidationError("form dimensions out of range");
  FormClass tag = j.contains("class") ? parse_class(j.at("class").get<std::string>()) : FormClass::Omega1;
  Encoding enc = Encoding::Under;
  if (j.contains("encoding")) {
    auto e = j.at("encoding").get<std::string>();
    if (e == "over") {
      enc = Encoding::Over;
    } else if (e != "under") {
      throw ValidationError("encoding must be \"under\" or \"over\"");
    }
  }
  const std::size_t nv = kernel_vars(p, m);
  std::vector<QPolyMap> coeffs(std::size_t{1} << k, QPolyMap(nv, static_cast<std::size_t>(m)));
  const Json& cj = field(j, "coeffs");
  if (!cj.is_object()) throw ValidationError("coeffs must map index lists to kernels");
  for (const auto& [key, val] : cj.items()) {
    auto e = parse_index_key(key, k);
    std::uint32_t mask = 0;
    for (int g = 0; g < k; ++g) {
      if (e[static_cast<std::size_t>(g)] > 1) throw ValidationError("expansion key " + key + " repeats a generator");
      if (e[static_cast<std::size_t>(g)] == 1) mask |= 1U << g;
    }
    if (val.is_string()) {
      if (val.get<std::string>() != "pi") throw ValidationError("the only named kernel is \"pi\"");
      coeffs[mask] = projection_kernel(p, m);
    } else {
      QPolyMap f = polymap_from_json(val);
      if (f.in_dim != nv || f.out_dim != static_cast<std::size_t>(m)) {
        throw ValidationError("kernel " + key + " must map " + std::to_string(nv) + " variables to " +
                              std::to_string(m) + " components");
      }
      coeffs[mask] = std::move(f);
    }
  }
  return FormElem(p, k, m, std::move(coeffs), tag, enc);
}

}  // namespace fnlab
