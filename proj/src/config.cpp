#include "logconvex/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

namespace logconvex {
namespace {

template <typename T>
void read(const nlohmann::json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

void reject_unknown(const nlohmann::json& obj, std::initializer_list<const char*> known, const char* where) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw ConfigError("unknown config key '" + item.key() + "' in " + where);
  }
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

ClassifyConfig RunConfig::classify_config() const {
  ClassifyConfig c;
  c.tail_fraction = tail_fraction;
  c.sub_windows = sub_windows;
  c.divergence_threshold = class_threshold;
  return c;
}

CertificateConfig RunConfig::certificate_config() const {
  return {window_ratio, certificate_windows, divergence_threshold};
}

CheckConfig RunConfig::check_config() const { return {classify_config(), certificate_config(), gap_tolerance}; }

NormConfig RunConfig::norm_config() const {
  NormConfig c;
  c.classify = classify_config();
  return c;
}

MembershipConfig RunConfig::membership_config() const {
  MembershipConfig c;
  c.norm = norm_config();
  c.certificate = certificate_config();
  return c;
}

void validate(const RunConfig& c) {
  if (!positive(c.grid.x_min) || !positive(c.grid.x_max) || !(c.grid.x_min < c.grid.x_max))
    throw ConfigError("grid bounds must satisfy 0 < x_min < x_max");
  if (c.grid.n < 2) throw ConfigError("grid needs n >= 2");
  if (!(c.tail_fraction > 0.0 && c.tail_fraction < 1.0)) throw ConfigError("tail_fraction must lie in (0, 1)");
  if (c.sub_windows < 3) throw ConfigError("sub_windows must be at least 3");
  if (!(std::isfinite(c.window_ratio) && c.window_ratio > 1.0)) throw ConfigError("window ratio must exceed 1");
  if (c.certificate_windows < 3) throw ConfigError("certificate windows must be at least 3");
  if (!positive(c.divergence_threshold) || !positive(c.class_threshold)) throw ConfigError("thresholds must be positive");
  if (!positive(c.gap_tolerance) || !positive(c.envelope_tolerance)) throw ConfigError("tolerances must be positive");
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"grid", "windows", "thresholds", "tolerances", "format"}, "config");
  RunConfig c;
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (!g.is_object()) throw ConfigError("config 'grid' must be an object");
    reject_unknown(g, {"x_min", "x_max", "n"}, "grid");
    read(g, "x_min", c.grid.x_min);
    read(g, "x_max", c.grid.x_max);
    read(g, "n", c.grid.n);
  }
  if (j.contains("windows")) {
    const auto& w = j.at("windows");
    if (!w.is_object()) throw ConfigError("config 'windows' must be an object");
    reject_unknown(w, {"tail_fraction", "sub_windows", "ratio", "count"}, "windows");
    read(w, "tail_fraction", c.tail_fraction);
    read(w, "sub_windows", c.sub_windows);
    read(w, "ratio", c.window_ratio);
    read(w, "count", c.certificate_windows);
  }
  if (j.contains("thresholds")) {
    const auto& t = j.at("thresholds");
    if (!t.is_object()) throw ConfigError("config 'thresholds' must be an object");
    reject_unknown(t, {"divergence", "class"}, "thresholds");
    read(t, "divergence", c.divergence_threshold);
    read(t, "class", c.class_threshold);
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (!t.is_object()) throw ConfigError("config 'tolerances' must be an object");
    reject_unknown(t, {"gap", "envelope"}, "tolerances");
    read(t, "gap", c.gap_tolerance);
    read(t, "envelope", c.envelope_tolerance);
  }
  if (j.contains("format")) {
    std::string f;
    read(j, "format", f);
    if (f == "csv") c.format = OutputFormat::Csv;
    else if (f == "json") c.format = OutputFormat::Json;
    else throw ConfigError("format must be 'csv' or 'json'");
  }
  validate(c);
  return c;
}

nlohmann::json to_json(const RunConfig& c) {
  return {
      {"grid", {{"x_min", c.grid.x_min}, {"x_max", c.grid.x_max}, {"n", c.grid.n}}},
      {"windows",
       {{"tail_fraction", c.tail_fraction},
        {"sub_windows", c.sub_windows},
        {"ratio", c.window_ratio},
        {"count", c.certificate_windows}}},
      {"thresholds", {{"divergence", c.divergence_threshold}, {"class", c.class_threshold}}},
      {"tolerances", {{"gap", c.gap_tolerance}, {"envelope", c.envelope_tolerance}}},
      {"format", c.format == OutputFormat::Csv ? "csv" : "json"},
  };
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::optional<RunConfig> config_from_environment() {
  const char* path = std::getenv("LOGCONVEX_CONFIG");
  if (path == nullptr || *path == '\0') return std::nullopt;
  return load_config(path);
}

}  // namespace logconvex
