#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fnlab/fnlab.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct Owned {
  char* s = nullptr;
  ~Owned() { fnlab_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Arguments may be inline JSON or a path to a JSON file.
std::string load_text(const std::string& arg) {
  std::error_code ec;
  if (!arg.empty() && arg.front() != '{' && arg.front() != '[' && std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    if (!in) throw InputError("cannot read '" + arg + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return arg;
}

int report_error(fnlab_status s) {
  std::cerr << "fnlab: " << fnlab_last_error() << "\n";
  return static_cast<int>(s);
}

fnlab_level parse_level(const std::string& name) {
  if (name == "L1") return FNLAB_LEVEL_L1;
  if (name == "L12") return FNLAB_LEVEL_L12;
  if (name == "FN13") return FNLAB_LEVEL_FN13;
  if (name == "FN123") return FNLAB_LEVEL_FN123;
  throw InputError("unknown level '" + name + "' (expected L1, L12, FN13 or FN123)");
}

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string config_path;
  bool heavy = false;
  bool json = false;
};

Json base_config(const Globals& g) {
  Json cfg = Json::object();
  if (!g.config_path.empty()) {
    try {
      cfg = Json::parse(load_text(g.config_path));
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw InputError("config must be a JSON object");
  }
  if (g.seed) cfg["seed"] = *g.seed;
  if (g.heavy) cfg["heavy"] = true;
  return cfg;
}

int cmd_weil(const Globals& g, const std::string& object) {
  fnlab_algebra* raw = nullptr;
  if (auto s = fnlab_algebra_new(load_text(object).c_str(), &raw); s != FNLAB_OK) return report_error(s);
  std::unique_ptr<fnlab_algebra, decltype(&fnlab_algebra_free)> alg(raw, fnlab_algebra_free);
  Owned out;
  if (auto s = fnlab_algebra_describe(alg.get(), &out.s); s != FNLAB_OK) return report_error(s);
  if (g.json) {
    std::cout << out.str() << "\n";
    return 0;
  }
  auto j = Json::parse(out.str());
  std::cout << j["name"].get<std::string>() << "  dim " << j["dim"].get<std::size_t>() << "\n";
  for (std::size_t i = 0; i < j["basis"].size(); ++i) {
    std::cout << "  " << i << "  " << j["basis"][i].dump() << "  " << j["names"][i].get<std::string>() << "\n";
  }
  return 0;
}

int cmd_bracket(const Globals& g, const std::string& a, const std::string& b, const std::string& level_name) {
  const fnlab_level level = parse_level(level_name);
  fnlab_form* rx = nullptr;
  fnlab_form* ry = nullptr;
  if (auto s = fnlab_form_parse(load_text(a).c_str(), &rx); s != FNLAB_OK) return report_error(s);
  std::unique_ptr<fnlab_form, decltype(&fnlab_form_free)> x(rx, fnlab_form_free);
  if (auto s = fnlab_form_parse(load_text(b).c_str(), &ry); s != FNLAB_OK) return report_error(s);
  std::unique_ptr<fnlab_form, decltype(&fnlab_form_free)> y(ry, fnlab_form_free);
  for (const fnlab_form* f : {x.get(), y.get()}) {
    if (auto s = fnlab_form_check(f, level); s != FNLAB_OK) return report_error(s);
  }
  fnlab_form* rr = nullptr;
  if (auto s = fnlab_bracket(x.get(), y.get(), level, &rr); s != FNLAB_OK) return report_error(s);
  std::unique_ptr<fnlab_form, decltype(&fnlab_form_free)> r(rr, fnlab_form_free);
  Owned out;
  if (auto s = fnlab_form_to_json(r.get(), &out.s); s != FNLAB_OK) return report_error(s);
  auto j = Json::parse(out.str());
  std::cout << (g.json ? j.dump(2) : j.dump()) << "\n";
  return 0;
}

int cmd_verify(const Globals& g, const std::string& mutation) {
  Json cfg = base_config(g);
  if (!mutation.empty()) cfg["mutation"] = mutation;
  fnlab_report* raw = nullptr;
  auto status = fnlab_verify(cfg.dump().c_str(), &raw);
  if (raw == nullptr) return report_error(status);
  std::unique_ptr<fnlab_report, decltype(&fnlab_report_free)> rep(raw, fnlab_report_free);
  Owned out;
  if (auto s = fnlab_report_to_json(rep.get(), 1, &out.s); s != FNLAB_OK) return report_error(s);
  if (g.json) {
    std::cout << out.str() << "\n";
  } else {
    auto j = Json::parse(out.str());
    for (const auto& p : j["properties"]) {
      const bool ok = p["failure_count"].get<std::size_t>() == 0;
      std::printf("%-4s %-44s %5zu cases  %8.1f ms\n", ok ? "ok" : "FAIL", p["name"].get<std::string>().c_str(),
                  p["cases"].get<std::size_t>(), p["wall_ms"].get<double>());
      if (!ok) {
        for (const auto& f : p["failures"]) {
          std::printf("       case %zu: %s\n", f["case"].get<std::size_t>(), f["message"].get<std::string>().c_str());
        }
      }
    }
    std::printf("%s\n", fnlab_report_passed(rep.get()) ? "all properties passed" : "some properties failed");
  }
  return static_cast<int>(status);
}

int cmd_jacobi3(const Globals& g, const std::vector<std::string>& fields, const std::string& points_arg, int npoints,
                int random_count, int m) {
  const std::uint64_t seed = g.seed.value_or(1);
  Owned out;
  fnlab_status status;
  if (!fields.empty()) {
    if (fields.size() != 3) throw InputError("--fields needs exactly three vector fields");
    std::string points_text = points_arg.empty() ? std::string() : load_text(points_arg);
    status = fnlab_jacobi3_fields(load_text(fields[0]).c_str(), load_text(fields[1]).c_str(),
                                  load_text(fields[2]).c_str(), points_arg.empty() ? nullptr : points_text.c_str(),
                                  seed, npoints, &out.s);
  } else if (random_count > 0) {
    status = fnlab_jacobi3_random(seed, random_count, m, &out.s);
  } else {
    throw InputError("jacobi3 needs --fields X Y Z or --random N");
  }
  if (out.s == nullptr) return report_error(status);
  auto j = Json::parse(out.str());
  if (g.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::size_t i = 0;
    for (const auto& c : j["cases"]) {
      std::cout << "case " << i++;
      if (c.contains("point")) std::cout << " at " << c["point"].dump();
      if (!c["violations"].empty()) {
        std::cout << ": incompatible " << c["violations"].dump() << "\n";
      } else {
        std::cout << ": defect " << c["defect"].dump() << "\n";
      }
    }
    std::cout << (j["all_zero"].get<bool>() ? "defect vanishes in every case" : "nonzero defect found") << "\n";
  }
  if (status != FNLAB_OK) std::cerr << "fnlab: " << fnlab_last_error() << "\n";
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fnlab: synthetic tangent-vector-form brackets and their identities"};
  app.require_subcommand(1);
  Globals g;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Base seed for random generation");
  app.add_option("--config", g.config_path, "Suite configuration (JSON file or inline JSON)");
  app.add_flag("--heavy", g.heavy, "Raise the arity caps to 2");
  app.add_flag("--json", g.json, "Machine-readable output");
  // Global flags may also follow the subcommand.
  app.fallthrough();

  auto* weil = app.add_subcommand("weil", "Describe the Weil algebra of an infinitesimal object");
  std::string object;
  weil->add_option("object", object, "Object as JSON {\"n\":..,\"p\":[[..]],\"bounds\":[..]}")->required();

  auto* bracket = app.add_subcommand("bracket", "Bracket two tangent-vector forms");
  std::string fa, fb, level = "L1";
  bracket->add_option("x", fa, "First form (JSON or file)")->required();
  bracket->add_option("y", fb, "Second form (JSON or file)")->required();
  bracket->add_option("--level", level, "L1, L12, FN13 or FN123")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the property suites");
  std::string mutation;
  verify->add_option("--mutate", mutation)->group("");

  auto* jacobi = app.add_subcommand("jacobi3", "Evaluate the three-term Jacobi defect");
  std::vector<std::string> fields;
  std::string points_arg;
  int npoints = 3, random_count = 0, m = 2;
  jacobi->add_option("--fields", fields, "Three vector fields as polynomial-map JSON")->expected(3);
  jacobi->add_option("--at", points_arg, "Points as a JSON list of coordinate lists");
  jacobi->add_option("--points", npoints, "Number of random points")->capture_default_str();
  jacobi->add_option("--random", random_count, "Number of random compatible configurations");
  jacobi->add_option("--dim", m, "Model dimension for --random")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : FNLAB_INPUT_ERROR;
  }
  if (seed_opt->count() > 0) g.seed = seed;

  try {
    if (weil->parsed()) return cmd_weil(g, object);
    if (bracket->parsed()) return cmd_bracket(g, fa, fb, level);
    if (verify->parsed()) return cmd_verify(g, mutation);
    if (jacobi->parsed()) return cmd_jacobi3(g, fields, points_arg, npoints, random_count, m);
  } catch (const InputError& e) {
    std::cerr << "fnlab: " << e.what() << "\n";
    return FNLAB_INPUT_ERROR;
  } catch (const Json::exception& e) {
    std::cerr << "fnlab: " << e.what() << "\n";
    return FNLAB_INPUT_ERROR;
  }
  return FNLAB_INPUT_ERROR;
}
