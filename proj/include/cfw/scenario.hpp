#pragma once

// Scenario files: an instance (inline, from a file, or from a generator),
// an ordered list of checks, a search strategy, tolerances and a seed.
// Running a scenario yields a Report of certificates.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cfw/io.hpp"

namespace cfw {

inline constexpr const char* kToolVersion = "0.1.0";

/// Builds an instance from a named generator. Known names:
/// paper_weaving_example, discrete_gabor, gabor_product,
/// random_fusion_family, random_product.
Instance generate_instance(const std::string& name, const json& params);

struct CheckSpec {
  std::string type;
  json params;
  std::optional<Verdict> expect;
};

struct Tolerances {
  double certificate = 1e-8;
  double rank = kRankTol;
  double frame_floor = 1e-9;
  double commute = 1e-8;
};

struct Scenario {
  json raw;
  json instance_spec;
  std::vector<CheckSpec> checks;
  std::uint64_t budget = kDefaultEnumerationBudget;
  /// "none", "sampled" or "descent".
  std::string fallback = "none";
  std::size_t samples = 256;
  std::size_t restarts = 8;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  std::string output;
  /// Directory that relative instance paths resolve against.
  std::filesystem::path base_dir;
};

Scenario parse_scenario(const json& j,
                        const std::filesystem::path& base_dir = ".");
Scenario load_scenario(const std::string& path);

Instance resolve_instance(const Scenario& s);

struct CheckResult {
  CheckSpec spec;
  Certificate certificate;
  double millis = 0.0;
  bool as_expected = true;
};

struct Report {
  json scenario;
  json effective;
  json instance;
  std::vector<CheckResult> results;
  std::uint64_t seed = 0;
  double total_millis = 0.0;
};

Report run_scenario(const Scenario& s);
json report_to_json(const Report& r);

/// 1 when a check failed or missed its expected verdict, 0 otherwise.
int report_exit_code(const Report& r);

}  // namespace cfw
