// logconvex: convex envelopes, asymptotic classes and weighted norms from the
// command line.
//
// Exit codes: 0 success, 1 failed checks (verify), 2 malformed input or
// configuration, 3 I/O failure.

#include "logconvex/config.hpp"
#include "logconvex/csv.hpp"
#include "logconvex/suite.hpp"
#include "logconvex/theorems.hpp"
#include "logconvex/weighted.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

using namespace logconvex;
using nlohmann::json;

namespace {

constexpr int kExitFailedChecks = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitIo = 3;

// Grid flags; unset values fall back to the run configuration.
struct GridFlags {
  std::optional<double> x_min, x_max;
  std::optional<Eigen::Index> n;
  bool enrich = false;
  double pad_decades = 6.0;

  void add_to(CLI::App& app) {
    app.add_option("--xmin", x_min, "Left end of the sampling window");
    app.add_option("--xmax", x_max, "Right end of the sampling window");
    app.add_option("-n,--knots", n, "Number of log-spaced knots");
    app.add_flag("--enrich-critical-points", enrich, "Add critical points and oscillation fill for catalog functions");
  }

  Grid grid_for(const AnalyticFunction& f, const RunConfig& cfg) const {
    const double lo = x_min.value_or(cfg.grid.x_min), hi = x_max.value_or(cfg.grid.x_max);
    const Eigen::Index count = n.value_or(cfg.grid.n);
    if (!(lo > 0.0 && lo < hi) || count < 2) throw ConfigError("grid needs 0 < xmin < xmax and n >= 2");
    return enrich ? catalog_grid(f, lo, hi, count) : make_log_grid(lo, hi, count);
  }
};

// A function given either as a catalog tag or as a CSV file.
struct FunctionSource {
  std::string catalog;
  std::string input;

  bool empty() const { return catalog.empty() && input.empty(); }

  std::optional<AnalyticFunction> analytic() const {
    if (catalog.empty()) return std::nullopt;
    try {
      return AnalyticFunction::parse(catalog);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }

  SampledFunction load(const GridFlags& flags, const RunConfig& cfg) const {
    if (!catalog.empty() && !input.empty()) throw InputError("give either a catalog name or an input file, not both");
    if (auto f = analytic()) return sample(*f, flags.grid_for(*f, cfg));
    if (!input.empty()) return read_function_csv(input);
    throw InputError("no function given: use a catalog name or an input file");
  }
};

// phi** on the sampled grid. Non-oscillatory catalog functions are hulled on
// a padded window so the window edges do not bend the result.
struct EnvelopeResult {
  ConvexSampledFunction envelope;
  std::string mode;
};

EnvelopeResult envelope_of(const FunctionSource& src, const SampledFunction& s, double pad_decades) {
  const auto f = src.analytic();
  if (f && !f->oscillatory() && pad_decades > 0.0) return {padded_envelope(*f, s.grid(), pad_decades), "padded"};
  return {convex_envelope(s), "window"};
}

void emit_json(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

json certificate_windows(const std::vector<IndexWindow>& ws) {
  json out = json::array();
  for (const auto& w : ws) out.push_back({{"first", w.first}, {"last", w.last}, {"x_lo", w.x_lo}, {"x_hi", w.x_hi}});
  return out;
}

json norm_json(const NormVerdict& v) {
  json j = {{"finite", v.finite},
            {"inf_gap", json_number(v.inf_gap)},
            {"argmin", json_number(v.argmin)},
            {"window_caveat", v.window_caveat}};
  j["norm"] = v.norm ? json_number(*v.norm) : json("infinite");
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

RadialWeight weight_from_source(const std::string& path, const std::string& catalog, const GridFlags& flags,
                                const RunConfig& cfg) {
  if (!path.empty() && !catalog.empty()) throw InputError("give either --weight or --weight-catalog, not both");
  if (!path.empty()) return read_weight_csv(path);
  if (catalog.empty()) throw InputError("no weight given: use --weight or --weight-catalog");
  const FunctionSource src{catalog, {}};
  return weight_from_log_profile(src.load(flags, cfg));
}

void print_table(const SuiteReport& report) {
  std::size_t width = 10;
  for (const auto& c : report.checks) width = std::max(width, c.name.size());
  for (const auto& c : report.checks) {
    std::cout << std::left << std::setw(static_cast<int>(width) + 2) << c.name << std::setw(21)
              << to_string(c.status) << c.summary << '\n';
  }
  std::cout << report.count(CheckStatus::Pass) << " passed, " << report.count(CheckStatus::Fail) << " failed\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex envelopes, asymptotic classes and weighted norms"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration (overrides LOGCONVEX_CONFIG)");

  RunConfig cfg;
  auto load_run_config = [&] {
    if (!config_path.empty()) cfg = load_config(config_path);
    else if (auto env = config_from_environment()) cfg = *env;
  };

  int exit_code = 0;

  // envelope ---------------------------------------------------------------
  auto* env_cmd = app.add_subcommand("envelope", "Write the greatest convex minorant as CSV");
  FunctionSource env_src;
  GridFlags env_grid;
  std::string env_out;
  env_cmd->add_option("--catalog", env_src.catalog, "Catalog function tag");
  env_cmd->add_option("--input", env_src.input, "CSV with header x,value");
  env_cmd->add_option("-o,--output", env_out, "Output CSV (default stdout)");
  env_cmd->add_option("--pad-decades", env_grid.pad_decades, "Padding for catalog functions (0 disables)");
  env_grid.add_to(*env_cmd);
  env_cmd->callback([&] {
    const SampledFunction s = env_src.load(env_grid, cfg);
    const EnvelopeResult r = envelope_of(env_src, s, env_grid.pad_decades);
    if (env_out.empty() || env_out == "-") write_function_csv(std::cout, r.envelope.function());
    else write_function_csv(env_out, r.envelope.function());
  });

  // classify ---------------------------------------------------------------
  auto* cls_cmd = app.add_subcommand("classify", "Estimate the asymptotic class as JSON");
  FunctionSource cls_src;
  GridFlags cls_grid;
  std::string cls_out;
  cls_cmd->add_option("--catalog", cls_src.catalog, "Catalog function tag");
  cls_cmd->add_option("--input", cls_src.input, "CSV with header x,value");
  cls_cmd->add_option("--json", cls_out, "Output file (default stdout)");
  cls_grid.add_to(*cls_cmd);
  cls_cmd->callback([&] {
    const SampledFunction s = cls_src.load(cls_grid, cfg);
    const ClassifyConfig c = cfg.classify_config();
    const AsymptoticProfile p = classify(s, c);
    json j = {{"schema", 1},
              {"class", std::string(to_string(p.phi_class))},
              {"phi_member", p.phi_member},
              {"a_hat", json_number(p.a_hat)},
              {"limit_at_zero", json_number(p.limit_at_zero)},
              {"head_windows", certificate_windows(p.head_windows)},
              {"tail_windows", certificate_windows(p.tail_windows)},
              {"thresholds", {{"class", json_number(c.divergence_threshold)}, {"tail_fraction", c.tail_fraction}}}};
    j["residual_liminf"] = p.residual_liminf ? json_number(*p.residual_liminf) : json(nullptr);
    emit_json(j, cls_out);
  });

  // gap ----------------------------------------------------------------------
  auto* gap_cmd = app.add_subcommand("gap", "Infimum of phi - psi as a JSON gap report");
  FunctionSource phi_src, psi_src;
  GridFlags gap_grid;
  bool envelope_phi = false, envelope_psi = false;
  std::string gap_out;
  gap_cmd->add_option("--phi-catalog", phi_src.catalog, "Catalog tag for phi");
  gap_cmd->add_option("--phi", phi_src.input, "CSV for phi");
  gap_cmd->add_option("--psi-catalog", psi_src.catalog, "Catalog tag for psi");
  gap_cmd->add_option("--psi", psi_src.input, "CSV for psi");
  gap_cmd->add_flag("--envelope-phi", envelope_phi, "Replace phi by its convex envelope");
  gap_cmd->add_flag("--envelope-psi", envelope_psi, "Replace psi by its convex envelope");
  gap_cmd->add_option("--pad-decades", gap_grid.pad_decades, "Padding for catalog envelopes (0 disables)");
  gap_cmd->add_option("--json", gap_out, "Output file (default stdout)");
  gap_grid.add_to(*gap_cmd);
  gap_cmd->callback([&] {
    SampledFunction phi = phi_src.load(gap_grid, cfg);
    SampledFunction psi = psi_src.load(gap_grid, cfg);
    if (!(phi.grid() == psi.grid())) throw InputError("phi and psi are sampled on different grids");
    const bool psi_convex_input = is_discretely_convex(psi);
    json j = {{"schema", 1}};
    if (envelope_phi) {
      const EnvelopeResult r = envelope_of(phi_src, phi, gap_grid.pad_decades);
      phi = r.envelope.function();
      j["envelope_phi"] = r.mode;
    }
    if (envelope_psi) {
      const EnvelopeResult r = envelope_of(psi_src, psi, gap_grid.pad_decades);
      psi = r.envelope.function();
      j["envelope_psi"] = r.mode;
    }
    const GapMinimum m = inf_gap(phi, psi);
    j["inf_gap"] = json_number(m.value);
    j["argmin"] = json_number(m.argmin);
    j["psi_convex"] = envelope_psi || psi_convex_input;
    j["knots"] = phi.size();
    emit_json(j, gap_out);
  });

  // verify -------------------------------------------------------------------
  auto* ver_cmd = app.add_subcommand("verify", "Run the check suite");
  std::string suite = "paper", only, ver_out;
  ver_cmd->add_option("--suite", suite, "Suite name")->check(CLI::IsMember({"paper"}));
  ver_cmd->add_option("--only", only, "Run checks whose names contain this text");
  ver_cmd->add_option("--json", ver_out, "Write the JSON report to this file");
  ver_cmd->callback([&] {
    const SuiteReport report = run_paper_suite(cfg, only);
    print_table(report);
    if (!ver_out.empty()) emit_json(to_json(report), ver_out);
    if (!report.all_passed()) exit_code = kExitFailedChecks;
  });

  // assoc-weight -------------------------------------------------------------
  auto* aw_cmd = app.add_subcommand("assoc-weight", "Write the associated log-concave weight");
  std::string aw_in, aw_out;
  bool aw_log = false;
  aw_cmd->add_option("--input", aw_in, "Weight CSV (y,weight or y,log_profile)")->required();
  aw_cmd->add_option("-o,--output", aw_out, "Output CSV (default stdout)");
  aw_cmd->add_flag("--log-profile", aw_log, "Write y,log_profile instead of y,weight");
  aw_cmd->callback([&] {
    const RadialWeight v = read_weight_csv(aw_in);
    const RadialWeight w = associated_weight(v);
    const bool as_log = aw_log || v.provenance() == WeightProvenance::FromLogProfile;
    if (aw_out.empty() || aw_out == "-") write_weight_csv(std::cout, w, as_log);
    else write_weight_csv(aw_out, w, as_log);
  });

  // norm ---------------------------------------------------------------------
  auto* norm_cmd = app.add_subcommand("norm", "Weighted sup-norm of a catalog holomorphic function");
  std::string weight_path, weight_catalog, function_spec, norm_out;
  bool compare = false;
  GridFlags norm_grid;
  norm_cmd->add_option("--weight", weight_path, "Weight CSV");
  norm_cmd->add_option("--weight-catalog", weight_catalog, "Catalog tag used as the log-profile");
  norm_cmd->add_option("--function", function_spec, "exp_iaz:a=..., cayley_pow:n=..., product:a=...,n=...")
      ->required();
  norm_cmd->add_flag("--compare-associated", compare, "Also compute the norm under the associated weight");
  norm_cmd->add_option("--json", norm_out, "Output file (default stdout)");
  norm_grid.add_to(*norm_cmd);
  norm_cmd->callback([&] {
    const RadialWeight v = weight_from_source(weight_path, weight_catalog, norm_grid, cfg);
    CatalogHoloFunction f = [&] {
      try {
        return CatalogHoloFunction::parse(function_spec);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
    }();
    json j = {{"schema", 1}, {"function", f.spec()}, {"under_v", norm_json(norm_in_Hv(f, v, cfg.norm_config()))}};
    if (compare) j["under_associated"] = norm_json(norm_in_Hv(f, associated_weight(v), cfg.norm_config()));
    emit_json(j, norm_out);
  });

  try {
    app.parse_complete_callback(load_run_config);
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return exit_code;
}
