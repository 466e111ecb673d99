#pragma once

// The named check suite behind `verify --suite paper`. Every check runs on
// fixed grids, reports its numbers, and passes when the observed outcome is
// the expected one (including checks that expect a hypothesis to fail).

#include "logconvex/config.hpp"
#include "logconvex/theorems.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace logconvex {

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Fail;
  std::string summary;
  nlohmann::json numbers = nlohmann::json::object();
  nlohmann::json windows = nlohmann::json::array();
};

struct SuiteReport {
  std::string suite;
  RunConfig config;
  std::vector<CheckResult> checks;  // sorted by name

  std::size_t count(CheckStatus s) const;
  bool all_passed() const { return count(CheckStatus::Fail) == 0; }
};

/// Names of every check in the suite, sorted.
std::vector<std::string> paper_suite_names();

/// Runs the checks whose names contain `only` (all when empty). Throws
/// ConfigError when the filter matches nothing.
SuiteReport run_paper_suite(const RunConfig& config, std::string_view only = {});

/// Finite numbers as JSON numbers, infinities as "+inf" / "-inf".
nlohmann::json json_number(double x);
nlohmann::json to_json(const DivergenceCertificate& c);
nlohmann::json to_json(const SuiteReport& report);

}  // namespace logconvex
