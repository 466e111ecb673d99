#pragma once

// Run configuration shared by the CLI and the check suite.

#include "logconvex/asymptotics.hpp"
#include "logconvex/theorems.hpp"
#include "logconvex/weighted.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace logconvex {

/// Invalid configuration values or unreadable configuration files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

struct GridSpec {
  double x_min = 1e-3;
  double x_max = 1e3;
  Eigen::Index n = 4096;
};

struct RunConfig {
  GridSpec grid;
  double tail_fraction = 0.25;
  int sub_windows = 3;
  double window_ratio = 10.0;
  int certificate_windows = 3;
  double divergence_threshold = 1e3;
  double class_threshold = 1e6;
  double gap_tolerance = 1e-6;
  double envelope_tolerance = 1e-9;
  OutputFormat format = OutputFormat::Json;

  ClassifyConfig classify_config() const;
  CertificateConfig certificate_config() const;
  CheckConfig check_config() const;
  NormConfig norm_config() const;
  MembershipConfig membership_config() const;
};

/// Throws ConfigError when a value is out of range.
void validate(const RunConfig& config);

/// Missing keys keep their defaults; unknown keys and wrong types throw ConfigError.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& config);

RunConfig load_config(const std::string& path);

/// The file named by LOGCONVEX_CONFIG, if the variable is set and non-empty.
std::optional<RunConfig> config_from_environment();

}  // namespace logconvex
