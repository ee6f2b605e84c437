#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "serialize.hpp"

namespace fnlab {

struct SuiteConfig {
  std::uint64_t seed = 1;
  int m_max = 2;
  int p_max = 1;
  int q_max = 1;
  int r_max = 1;
  int deg_max = 2;
  int max_terms = 3;
  /// Cases per property, or per arity combination for arity-indexed properties.
  int cases_per_property = 25;
  std::vector<std::string> suites;
  /// Worker threads; 0 picks the hardware concurrency.
  int jobs = 0;
  /// Harness self-test hook: "strong-diff-sign" corrupts the strong difference.
  std::string mutation;

  void validate() const;
  Json to_json() const;
  static SuiteConfig from_json(const Json& j);
  /// Raises the arity caps to 2.
  void make_heavy();
  static const std::vector<std::string>& all_suites();
};

struct Failure {
  std::size_t case_index = 0;
  std::string message;
  Json witness;
};

struct PropertyResult {
  std::string name;
  std::string suite;
  std::string statement;
  std::size_t cases = 0;
  std::size_t failure_count = 0;
  /// The first few failures with their witnesses.
  std::vector<Failure> failures;
  double wall_ms = 0;
  bool passed() const { return failure_count == 0; }
};

struct Report {
  SuiteConfig config;
  std::vector<PropertyResult> properties;
  bool passed() const;
  Json to_json(bool include_timing = true) const;
};

std::vector<std::string> property_names();
/// Runs one property. `cases` overrides the configured count when positive.
PropertyResult run_property(const std::string& name, const SuiteConfig& config, int cases = 0);
Report run_suite(const SuiteConfig& config);

}  // namespace fnlab
