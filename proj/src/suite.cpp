#include "logconvex/suite.hpp"

#include "logconvex/instances.hpp"
#include "logconvex/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <iomanip>
#include <random>
#include <sstream>

namespace logconvex {
namespace {

using nlohmann::json;
constexpr double kNormRelTol = 1e-6;

AnalyticFunction cat(CatalogKind k) { return AnalyticFunction::catalog(k); }

std::string sci(double x) {
  std::ostringstream os;
  os << std::setprecision(4) << x;
  return os.str();
}

CheckStatus pass_if(bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; }

Grid with_knots(const Grid& base, std::vector<double> exact) { return grid_union(base.view(), exact); }

// Grids shared by several checks.
Grid ex31_grid() { return with_knots(make_log_grid(1e-3, 1e3, 8192), {1.0}); }
Grid ex33b_grid() { return with_knots(make_log_grid(1e-8, 1e2, 4096), {1.0, 2.0}); }
Grid prop41_grid() { return counterexample_grid(CounterexampleFamily::Prop41, 1e-5, 1e2); }
Grid prop42_grid() { return counterexample_grid(CounterexampleFamily::Prop42, 1e-3, 1e4); }
Grid class_grid() { return make_log_grid(1e-3, 1e6, 8192); }

// Window for asymptotic checks on catalog members. The quadratic oscillation
// needs 32 knots per period, so its window stops earlier.
Grid catalog_window(const AnalyticFunction& f) {
  const bool quadratic = std::any_of(f.components().begin(), f.components().end(), [](CatalogKind k) {
    return k == CatalogKind::Prop42Phi || k == CatalogKind::Prop42Psi;
  });
  return catalog_grid(f, 1e-3, quadratic ? 1e4 : 1e6, 8192);
}

Grid weight_grid(const AnalyticFunction& f) { return catalog_grid(f, 1e-3, 1e3, 4096); }
Grid hv0_grid(const AnalyticFunction& f) { return catalog_grid(f, 1e-5, 1e5, 4096); }

json gap_json(const GapReport& r) {
  return {{"inf_gap_raw", json_number(r.inf_gap_raw)},
          {"inf_gap_envelope", json_number(r.inf_gap_envelope)},
          {"argmin_raw", json_number(r.argmin_raw)},
          {"argmin_envelope", json_number(r.argmin_envelope)},
          {"psi_convex", r.psi_convex},
          {"tolerance", json_number(r.tolerance)},
          {"outcome", std::string(to_string(r.status))}};
}

void add_certificates(CheckResult& out, const DivergenceCheckReport& r) {
  json raw = to_json(r.raw);
  raw["role"] = "raw";
  json env = to_json(r.envelope);
  env["role"] = "envelope";
  out.windows.push_back(std::move(raw));
  out.windows.push_back(std::move(env));
  out.numbers["outcome"] = std::string(to_string(r.status));
  out.numbers["psi_convex"] = r.psi_convex;
  if (r.psi_class) out.numbers["psi_class"] = std::string(to_string(*r.psi_class));
  if (!r.note.empty()) out.numbers["note"] = r.note;
}

// ---------------------------------------------------------------------------
// Checks

CheckResult classify_one(const RunConfig& cfg, CatalogKind kind, PhiClass expected) {
  CheckResult out;
  const AsymptoticProfile p = classify(sample(cat(kind), class_grid()), cfg.classify_config());
  bool ok = p.phi_class == expected;
  if (kind == CatalogKind::XMinusSqrtX) ok = ok && std::abs(p.a_hat - 1.0) <= 2e-3;
  if (kind == CatalogKind::Reciprocal)
    ok = ok && p.residual_liminf && std::abs(*p.residual_liminf) <= 1e-3;
  out.status = pass_if(ok);
  out.summary = "class " + std::string(to_string(p.phi_class));
  out.numbers = {{"class", std::string(to_string(p.phi_class))},
                 {"expected", std::string(to_string(expected))},
                 {"a_hat", json_number(p.a_hat)},
                 {"limit_at_zero", json_number(p.limit_at_zero)}};
  if (p.residual_liminf) out.numbers["residual_liminf"] = json_number(*p.residual_liminf);
  for (const auto& w : p.tail_windows) out.windows.push_back({{"first", w.first}, {"last", w.last}, {"x_lo", w.x_lo}, {"x_hi", w.x_hi}});
  return out;
}

CheckResult envelope_catalog_oracle(const RunConfig& cfg) {
  CheckResult out;
  double worst = 0.0;
  bool idempotent = true;
  for (const auto& f : catalog_functions()) {
    const SampledFunction s = sample(f, weight_grid(f));
    const ConvexSampledFunction env = convex_envelope(s);
    const ConvexSampledFunction bic = biconjugate_via_legendre(s);
    double rel = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      const double e = env.values()[i], b = bic.values()[i];
      const double scale = std::max({std::abs(e), std::abs(b), std::numeric_limits<double>::min()});
      rel = std::max(rel, e == b ? 0.0 : std::abs(e - b) / scale);
    }
    const bool same = (convex_envelope(env.function()).values() == env.values()).all();
    idempotent = idempotent && same;
    worst = std::max(worst, rel);
    out.numbers["max_relative_difference"][f.name()] = json_number(rel);
  }
  out.status = pass_if(worst <= cfg.envelope_tolerance && idempotent);
  out.summary = "max relative difference " + sci(worst);
  out.numbers["worst"] = json_number(worst);
  out.numbers["idempotent"] = idempotent;
  return out;
}

CheckResult envelope_random_oracle(const RunConfig& cfg) {
  CheckResult out;
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> knots(3, 200);
  double worst = 0.0;
  int failures = 0;
  for (int t = 0; t < 200; ++t) {
    const Grid g = random_grid(rng, knots(rng));
    const SampledFunction f = random_piecewise(rng, g);
    const ConvexSampledFunction env = convex_envelope(f);
    const ConvexSampledFunction bic = biconjugate_via_legendre(f);
    double rel = 0.0;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
      const double e = env.values()[i], b = bic.values()[i];
      const double scale = std::max({std::abs(e), std::abs(b), std::numeric_limits<double>::min()});
      rel = std::max(rel, e == b ? 0.0 : std::abs(e - b) / scale);
    }
    const bool same = (convex_envelope(env.function()).values() == env.values()).all();
    if (rel > cfg.envelope_tolerance || !same) ++failures;
    worst = std::max(worst, rel);
  }
  out.status = pass_if(failures == 0);
  out.summary = std::to_string(failures) + " of 200 instances failed";
  out.numbers = {{"instances", 200}, {"failures", failures}, {"worst", json_number(worst)}};
  return out;
}

CheckResult ex31_inf_gap(const RunConfig& cfg) {
  CheckResult out;
  const Grid g = ex31_grid();
  const AnalyticFunction phi = cat(CatalogKind::Ex31Phi);
  const SampledFunction psi = sample(cat(CatalogKind::Ex31Psi), g);
  const ConvexSampledFunction env = padded_envelope(phi, g);
  const GapReport r = theorem31_check(sample(phi, g), env, psi, cfg.gap_tolerance);
  const bool ok = std::abs(r.inf_gap_raw - 1.0) <= 2e-3 && r.inf_gap_envelope >= 0.0 && r.inf_gap_envelope <= 2e-3 &&
                  r.status == CheckStatus::HypothesisViolated;
  out.status = pass_if(ok);
  out.summary = "raw " + sci(r.inf_gap_raw) + ", envelope " + sci(r.inf_gap_envelope);
  out.numbers = gap_json(r);
  return out;
}

CheckResult ex32_certificate(const RunConfig& cfg) {
  CheckResult out;
  const Grid g = prop41_grid();
  const DivergenceCertificate c = divergence_certificate(sample(cat(CatalogKind::Prop41Phi), g),
                                                         sample(cat(CatalogKind::Prop41Psi), g), End::AtZero,
                                                         cfg.certificate_config());
  out.status = pass_if(c.diverges);
  out.summary = c.diverges ? "gap 2/x certified divergent at 0+" : "divergence not certified";
  out.windows.push_back(to_json(c));
  return out;
}

CheckResult ex33a_certificate(const RunConfig& cfg) {
  CheckResult out;
  const Grid g = prop42_grid();
  const DivergenceCertificate c = divergence_certificate(sample(cat(CatalogKind::Prop42Phi), g),
                                                         sample(cat(CatalogKind::Prop42Psi), g), End::AtInfinity,
                                                         cfg.certificate_config());
  out.status = pass_if(c.diverges);
  out.summary = c.diverges ? "gap 2x certified divergent at +inf" : "divergence not certified";
  out.windows.push_back(to_json(c));
  return out;
}

CheckResult ex33b_gaps(const RunConfig&) {
  CheckResult out;
  const Grid g = ex33b_grid();
  const SampledFunction phi = sample(cat(CatalogKind::Ex33Phi), g);
  const SampledFunction psi = sample(cat(CatalogKind::Ex33Psi), g);
  const ConvexSampledFunction phi_env = convex_envelope(phi);
  const ConvexSampledFunction psi_env = convex_envelope(psi);
  const GapMinimum raw = inf_gap(phi, psi);
  const GapMinimum env = inf_gap(phi_env.function(), psi_env.function());
  double deviation = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (g[i] < 1e-2) continue;
    const double expected = g[i] <= 2.0 ? -1.0 : g[i] * g[i] + g[i] - 7.0;
    deviation = std::max(deviation, std::abs(psi_env.values()[i] - expected));
  }
  const bool ok = std::abs(raw.value) <= 1e-9 && raw.argmin == 1.0 && std::abs(env.value - 1.0) <= 1e-3 &&
                  deviation <= 1e-6;
  out.status = pass_if(ok);
  out.summary = "raw " + sci(raw.value) + ", envelopes " + sci(env.value);
  out.numbers = {{"inf_gap_raw", json_number(raw.value)},
                 {"argmin_raw", json_number(raw.argmin)},
                 {"inf_gap_envelopes", json_number(env.value)},
                 {"psi_envelope_max_deviation", json_number(deviation)}};
  return out;
}

CheckResult ex33b_theorem31(const RunConfig& cfg) {
  CheckResult out;
  const Grid g = ex33b_grid();
  const SampledFunction phi = sample(cat(CatalogKind::Ex33Phi), g);
  const SampledFunction psi_env = convex_envelope(sample(cat(CatalogKind::Ex33Psi), g)).function();
  const GapReport r = theorem31_check(phi, psi_env, cfg.gap_tolerance);
  out.status = pass_if(r.status == CheckStatus::Pass && std::abs(r.inf_gap_raw - 1.0) <= 1e-3);
  out.summary = "both infima " + sci(r.inf_gap_raw);
  out.numbers = gap_json(r);
  return out;
}

CheckResult theorem31_random(const RunConfig& cfg) {
  CheckResult out;
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> knots(3, 200);
  int failures = 0;
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const Grid g = random_grid(rng, knots(rng));
    const SampledFunction phi = random_piecewise(rng, g);
    const SampledFunction psi = random_convex(rng, g);
    const GapReport r = theorem31_check(phi, psi, cfg.gap_tolerance);
    worst = std::max(worst, std::abs(r.inf_gap_raw - r.inf_gap_envelope));
    if (r.status != CheckStatus::Pass || r.inf_gap_envelope > r.inf_gap_raw) ++failures;
  }
  out.status = pass_if(failures == 0);
  out.summary = std::to_string(failures) + " of 500 pairs failed";
  out.numbers = {{"pairs", 500}, {"failures", failures}, {"worst_difference", json_number(worst)}};
  return out;
}

template <typename Fn>
CheckResult over_catalog(const RunConfig& cfg, const char* what, Fn fn) {
  CheckResult out;
  int failures = 0;
  for (const auto& f : catalog_functions()) {
    json row = json::object();
    const bool ok = fn(sample(f, catalog_window(f)), cfg, row);
    if (!ok) ++failures;
    row["ok"] = ok;
    out.numbers["functions"][f.name()] = std::move(row);
  }
  out.status = pass_if(failures == 0);
  out.summary = std::to_string(failures) + " catalog functions failed " + what;
  out.numbers["failures"] = failures;
  return out;
}

CheckResult lemma41_catalog(const RunConfig& cfg) {
  return over_catalog(cfg, "head/slope agreement", [](const SampledFunction& s, const RunConfig& c, json& row) {
    const Lemma41Report r = lemma41_check(s, c.classify_config());
    row = {{"head_delta", json_number(r.head_delta)},
           {"a_hat_delta", json_number(r.a_hat_delta)},
           {"ratio_delta", json_number(r.ratio_delta)}};
    return r.agree;
  });
}

CheckResult lemma42_catalog(const RunConfig& cfg) {
  return over_catalog(cfg, "class invariance", [](const SampledFunction& s, const RunConfig& c, json& row) {
    const ClassInvarianceReport r = check_class_invariance(s, c.classify_config());
    row = {{"class", std::string(to_string(r.class_f))}, {"class_envelope", std::string(to_string(r.class_envelope))}};
    return r.agree;
  });
}

CheckResult lemma44_catalog(const RunConfig& cfg) {
  return over_catalog(cfg, "psi_hat monotonicity", [](const SampledFunction& s, const RunConfig&, json&) {
    return is_non_increasing(psi_hat(convex_envelope(s)));
  });
}

CheckResult lemma45_catalog(const RunConfig& cfg) {
  return over_catalog(cfg, "class/psi_hat consistency", [](const SampledFunction& s, const RunConfig& c, json& row) {
    const Lemma45Report r = lemma45_check(s, c.classify_config());
    row = {{"class", std::string(to_string(r.phi_class))}, {"psi_hat_bounded", r.psi_hat_bounded}};
    return r.consistent;
  });
}

CheckResult lemma44_random(const RunConfig&) {
  CheckResult out;
  std::mt19937_64 rng(44);
  std::uniform_int_distribution<int> knots(3, 200);
  int failures = 0;
  for (int t = 0; t < 200; ++t) {
    const Grid g = random_grid(rng, knots(rng));
    if (!is_non_increasing(psi_hat(convex_envelope(random_piecewise(rng, g))))) ++failures;
  }
  out.status = pass_if(failures == 0);
  out.summary = std::to_string(failures) + " of 200 instances failed";
  out.numbers = {{"instances", 200}, {"failures", failures}};
  return out;
}

CheckResult counterexample_bounds(CounterexampleFamily fam) {
  CheckResult out;
  const Grid g = fam == CounterexampleFamily::Prop41 ? prop41_grid() : prop42_grid();
  const CounterexampleReport r = verify_counterexample(fam, 1, 10, g);
  for (const auto& p : r.points) {
    out.windows.push_back({{"k", p.k},
                           {"x_touch", json_number(p.x_touch)},
                           {"x_mid", json_number(p.x_mid)},
                           {"touch_rel_error", json_number(p.touch_rel_error)},
                           {"envelope_gap", json_number(p.envelope_gap)},
                           {"chord_gap", json_number(p.chord_gap)},
                           {"bound", json_number(p.bound)},
                           {"raw_gap", json_number(p.raw_gap)},
                           {"ok", p.touch_ok && p.bound_ok && p.raw_ok}});
  }
  out.status = pass_if(r.all_ok);
  out.summary = r.all_ok ? "touch, bound and raw-gap identities hold for k = 1..10" : "a counterexample identity failed";
  out.numbers = {{"knots", g.size()}, {"k_first", 1}, {"k_last", 10}};
  return out;
}

CheckResult counterexample_witness(CounterexampleFamily fam) {
  CheckResult out;
  const Grid g = fam == CounterexampleFamily::Prop41 ? prop41_grid() : prop42_grid();
  const CounterexampleReport r = verify_counterexample(fam, 0, 0, g);
  out.status = pass_if(r.witness_negative);
  out.summary = "second difference at x~_0 is " + sci(r.second_difference_at_mid0);
  out.numbers = {{"second_difference", json_number(r.second_difference_at_mid0)}};
  return out;
}

CheckResult counterexample_points_check(CounterexampleFamily fam) {
  CheckResult out;
  const CounterexamplePoints p = counterexample_points(fam, 11);
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < p.x_touch.size(); ++k) {
    const double a = p.x_touch[k], b = p.x_touch[k + 1];
    const double mean = fam == CounterexampleFamily::Prop41 ? 2.0 * a * b / (a + b) : 0.5 * (a + b);
    worst = std::max(worst, std::abs(mean - p.x_mid[k]) / p.x_mid[k]);
  }
  const bool ok = worst <= 1e-12;
  out.status = pass_if(ok);
  out.summary = "mean identity relative error " + sci(worst);
  out.numbers = {{"x_touch_0", json_number(p.x_touch[0])},
                 {"x_mid_0", json_number(p.x_mid[0])},
                 {"worst_relative_error", json_number(worst)}};
  return out;
}

CheckResult divergence_check(const DivergenceCheckReport& r, CheckStatus expected) {
  CheckResult out;
  add_certificates(out, r);
  out.status = pass_if(r.status == expected);
  out.summary = "outcome " + std::string(to_string(r.status)) + ", expected " + std::string(to_string(expected));
  return out;
}

CheckResult theorem32_reciprocal(const RunConfig& cfg) {
  const Grid g = make_log_grid(1e-5, 1e2, 4096);
  return divergence_check(
      theorem32_check(sample(cat(CatalogKind::Reciprocal) + AnalyticFunction::affine(0.0, 1.0), g),
                      sample(AnalyticFunction::affine(0.0, 1.0), g), cfg.check_config()),
      CheckStatus::Pass);
}

CheckResult theorem32_ex31_reciprocal(const RunConfig& cfg) {
  const AnalyticFunction phi = cat(CatalogKind::Ex31Phi) + cat(CatalogKind::Reciprocal);
  const Grid g = catalog_grid(phi, 1e-5, 1e2, 4096);
  const SampledFunction psi = convex_envelope(sample(cat(CatalogKind::Ex31Psi), g)).function();
  return divergence_check(theorem32_check(sample(phi, g), psi, cfg.check_config()), CheckStatus::Pass);
}

CheckResult theorem32_prop41(const RunConfig& cfg) {
  const Grid g = prop41_grid();
  CheckResult out = divergence_check(theorem32_check(sample(cat(CatalogKind::Prop41Phi), g),
                                                     sample(cat(CatalogKind::Prop41Psi), g), cfg.check_config()),
                                     CheckStatus::HypothesisViolated);
  return out;
}

CheckResult theorem33_square(const RunConfig& cfg) {
  const Grid g = make_log_grid(1e-3, 1e5, 8192);
  return divergence_check(theorem33_check(sample(cat(CatalogKind::Square) + AnalyticFunction::affine(2.0, 0.0), g),
                                          sample(cat(CatalogKind::Square), g), cfg.check_config()),
                          CheckStatus::Pass);
}

CheckResult theorem33_x_minus_sqrtx(const RunConfig& cfg) {
  // The gap ln(1+x) grows too slowly to reach the default threshold on any
  // double-precision window, so this check certifies against a lower one.
  const Grid g = make_log_grid(1e-3, 1e6, 8192);
  const AnalyticFunction log1p = AnalyticFunction::custom("log1p", [](double x) { return std::log1p(x); });
  CheckConfig c = cfg.check_config();
  c.certificate.threshold = std::min(c.certificate.threshold, 5.0);
  const SampledFunction psi = convex_envelope(sample(cat(CatalogKind::XMinusSqrtX), g)).function();
  CheckResult out = divergence_check(theorem33_check(sample(cat(CatalogKind::XMinusSqrtX) + log1p, g), psi, c),
                                     CheckStatus::Pass);
  out.numbers["threshold"] = json_number(c.certificate.threshold);
  return out;
}

CheckResult theorem33_prop42(const RunConfig& cfg) {
  const Grid g = prop42_grid();
  return divergence_check(theorem33_check(sample(cat(CatalogKind::Prop42Phi), g),
                                          sample(cat(CatalogKind::Prop42Psi), g), cfg.check_config()),
                          CheckStatus::HypothesisViolated);
}

CheckResult corollary31_reciprocal_square(const RunConfig& cfg) {
  const Grid g = make_log_grid(1e-5, 1e2, 4096);
  return divergence_check(corollary_checks(sample(cat(CatalogKind::Reciprocal) + cat(CatalogKind::Square), g),
                                           sample(cat(CatalogKind::Square), g), End::AtZero, cfg.check_config()),
                          CheckStatus::Pass);
}

CheckResult corollary31_prop41(const RunConfig& cfg) {
  const Grid g = prop41_grid();
  return divergence_check(corollary_checks(sample(cat(CatalogKind::Prop41Phi), g),
                                           sample(cat(CatalogKind::Prop41Psi), g), End::AtZero, cfg.check_config()),
                          CheckStatus::Pass);
}

CheckResult corollary32_prop42(const RunConfig& cfg) {
  const Grid g = prop42_grid();
  return divergence_check(corollary_checks(sample(cat(CatalogKind::Prop42Phi), g),
                                           sample(cat(CatalogKind::Prop42Psi), g), End::AtInfinity,
                                           cfg.check_config()),
                          CheckStatus::Pass);
}

json norm_json(const NormVerdict& v) {
  json j = {{"finite", v.finite}, {"inf_gap", json_number(v.inf_gap)}, {"argmin", json_number(v.argmin)},
            {"window_caveat", v.window_caveat}};
  if (v.norm) j["norm"] = json_number(*v.norm);
  else j["norm"] = "infinite";
  return j;
}

CheckResult theorem61_catalog(const RunConfig& cfg) {
  CheckResult out;
  int failures = 0;
  for (const auto& f : catalog_functions()) {
    const RadialWeight v = weight_from_log_profile(sample(f, weight_grid(f)));
    const Theorem61Report r = theorem61_check(v, holo_catalog(), cfg.norm_config(), kNormRelTol);
    for (const auto& row : r.rows) {
      out.windows.push_back({{"weight", f.name()},
                             {"function", row.function},
                             {"under_v", norm_json(row.under_v)},
                             {"under_w", norm_json(row.under_w)},
                             {"relative_difference", json_number(row.relative_difference)},
                             {"agree", row.agree}});
      if (!row.agree) ++failures;
    }
  }
  out.status = pass_if(failures == 0);
  out.summary = std::to_string(failures) + " weight/function pairs disagree";
  out.numbers = {{"failures", failures}};
  return out;
}

// Weights in the catalog whose profile is certified to blow up at 0+.
std::vector<std::pair<std::string, RadialWeight>> hv0_weights(const RunConfig& cfg) {
  std::vector<std::pair<std::string, RadialWeight>> out;
  for (const auto& f : catalog_functions()) {
    RadialWeight v = weight_from_log_profile(sample(f, hv0_grid(f)));
    if (nontriviality(v, cfg.classify_config()).hv0_nontrivial) out.emplace_back(f.name(), std::move(v));
  }
  return out;
}

json membership_json(const MembershipVerdict& m) {
  return {{"member", m.member},
          {"strict_member", m.strict_member},
          {"psi_class", std::string(to_string(m.psi_class))},
          {"norm", norm_json(m.norm)},
          {"at_zero", to_json(m.at_zero)},
          {"at_infinity", to_json(m.at_infinity)},
          {"class_conflict", m.class_conflict},
          {"boundary_only_flag", m.boundary_only_flag}};
}

CheckResult theorem62_and_c(const RunConfig& cfg, bool class_constraint) {
  CheckResult out;
  int failures = 0, conflicts = 0, flagged = 0, strict = 0;
  std::vector<std::string> names;
  for (const auto& [name, v] : hv0_weights(cfg)) {
    names.push_back(name);
    const Theorem62Report r = theorem62_check(v, holo_catalog(), cfg.membership_config(), kNormRelTol);
    if (r.status != CheckStatus::Pass) ++failures;
    for (const auto& row : r.rows) {
      for (const auto* m : {&row.under_v, &row.under_w}) {
        conflicts += m->class_conflict ? 1 : 0;
        flagged += m->boundary_only_flag ? 1 : 0;
        strict += m->strict_member ? 1 : 0;
      }
      if (!class_constraint)
        out.windows.push_back({{"weight", name},
                               {"function", row.function},
                               {"under_v", membership_json(row.under_v)},
                               {"under_w", membership_json(row.under_w)},
                               {"agree", row.agree}});
    }
  }
  out.numbers["weights"] = names;
  if (class_constraint) {
    out.status = pass_if(conflicts == 0 && strict > 0);
    out.summary = std::to_string(strict) + " strict members, " + std::to_string(conflicts) + " class conflicts, " +
                  std::to_string(flagged) + " boundary-only flags";
    out.numbers["strict_members"] = strict;
    out.numbers["class_conflicts"] = conflicts;
    out.numbers["boundary_only_flags"] = flagged;
  } else {
    out.status = pass_if(failures == 0 && !names.empty());
    out.summary = std::to_string(failures) + " of " + std::to_string(names.size()) + " weights disagree";
    out.numbers["failures"] = failures;
  }
  return out;
}

CheckResult nontriviality_examples(const RunConfig& cfg) {
  CheckResult out;
  const Grid g = make_log_grid(1e-3, 1e3, 4096);
  auto weight = [&](double (*fn)(double)) {
    Eigen::ArrayXd v(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) v[i] = fn(g[i]);
    return weight_from_log_profile(SampledFunction(g, std::move(v)));
  };
  struct Case {
    const char* name;
    double (*fn)(double);
    bool hv, hv0;
  };
  const Case cases[] = {
      {"y^2", [](double y) { return y * y; }, true, false},
      {"1/y+y^2", [](double y) { return 1.0 / y + y * y; }, true, true},
      {"-y^2", [](double y) { return -y * y; }, false, false},
  };
  bool ok = true;
  for (const auto& c : cases) {
    const NontrivialityReport r = nontriviality(weight(c.fn), cfg.classify_config());
    const bool match = r.hv_nontrivial == c.hv && r.hv0_nontrivial == c.hv0;
    ok = ok && match;
    out.numbers[c.name] = {{"hv_nontrivial", r.hv_nontrivial},
                           {"hv0_nontrivial", r.hv0_nontrivial},
                           {"class", std::string(to_string(r.phi_class))},
                           {"ok", match}};
  }
  out.status = pass_if(ok);
  out.summary = ok ? "verdicts match for all three profiles" : "a nontriviality verdict differs";
  return out;
}

using CheckFn = std::function<CheckResult(const RunConfig&)>;

std::vector<std::pair<std::string, CheckFn>> registry() {
  using F = CounterexampleFamily;
  return {
      {"classify.reciprocal", [](const RunConfig& c) { return classify_one(c, CatalogKind::Reciprocal, PhiClass::Phi3); }},
      {"classify.square", [](const RunConfig& c) { return classify_one(c, CatalogKind::Square, PhiClass::Phi1); }},
      {"classify.x_minus_sqrtx", [](const RunConfig& c) { return classify_one(c, CatalogKind::XMinusSqrtX, PhiClass::Phi2); }},
      {"corollary31.prop41", corollary31_prop41},
      {"corollary31.reciprocal_square", corollary31_reciprocal_square},
      {"corollary32.prop42", corollary32_prop42},
      {"envelope.catalog_oracle", envelope_catalog_oracle},
      {"envelope.random_oracle", envelope_random_oracle},
      {"ex31.inf_gap", ex31_inf_gap},
      {"ex32.certificate", ex32_certificate},
      {"ex33a.certificate", ex33a_certificate},
      {"ex33b.gaps", ex33b_gaps},
      {"ex33b.theorem31", ex33b_theorem31},
      {"lemma41.catalog", lemma41_catalog},
      {"lemma42.class_invariance", lemma42_catalog},
      {"lemma44.catalog", lemma44_catalog},
      {"lemma44.random", lemma44_random},
      {"lemma45.catalog", lemma45_catalog},
      {"nontriviality.examples", nontriviality_examples},
      {"prop41.bounds", [](const RunConfig&) { return counterexample_bounds(F::Prop41); }},
      {"prop41.points", [](const RunConfig&) { return counterexample_points_check(F::Prop41); }},
      {"prop41.witness", [](const RunConfig&) { return counterexample_witness(F::Prop41); }},
      {"prop42.bounds", [](const RunConfig&) { return counterexample_bounds(F::Prop42); }},
      {"prop42.points", [](const RunConfig&) { return counterexample_points_check(F::Prop42); }},
      {"prop42.witness", [](const RunConfig&) { return counterexample_witness(F::Prop42); }},
      {"theorem31.random", theorem31_random},
      {"theorem32.ex31_reciprocal", theorem32_ex31_reciprocal},
      {"theorem32.prop41_flagged", theorem32_prop41},
      {"theorem32.reciprocal", theorem32_reciprocal},
      {"theorem33.prop42_flagged", theorem33_prop42},
      {"theorem33.square", theorem33_square},
      {"theorem33.x_minus_sqrtx", theorem33_x_minus_sqrtx},
      {"theorem61.catalog", theorem61_catalog},
      {"theorem62.catalog", [](const RunConfig& c) { return theorem62_and_c(c, false); }},
      {"theorem_c.membership", [](const RunConfig& c) { return theorem62_and_c(c, true); }},
  };
}

}  // namespace

std::size_t SuiteReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [&](const auto& c) { return c.status == s; }));
}

std::vector<std::string> paper_suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  std::sort(names.begin(), names.end());
  return names;
}

SuiteReport run_paper_suite(const RunConfig& config, std::string_view only) {
  validate(config);
  auto checks = registry();
  std::sort(checks.begin(), checks.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  SuiteReport report;
  report.suite = "paper";
  report.config = config;
  for (const auto& [name, fn] : checks) {
    if (!only.empty() && name.find(only) == std::string::npos) continue;
    CheckResult r;
    try {
      r = fn(config);
    } catch (const std::exception& e) {
      r.status = CheckStatus::Fail;
      r.summary = std::string("error: ") + e.what();
    }
    r.name = name;
    report.checks.push_back(std::move(r));
  }
  if (report.checks.empty()) throw ConfigError("no check matches '" + std::string(only) + "'");
  return report;
}

json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  return x;
}

json to_json(const DivergenceCertificate& c) {
  json windows = json::array();
  for (const auto& w : c.window_minima)
    windows.push_back({{"x_lo", json_number(w.x_lo)},
                       {"x_hi", json_number(w.x_hi)},
                       {"min_gap", json_number(w.min_gap)},
                       {"argmin", json_number(w.argmin)}});
  return {{"end", std::string(to_string(c.end))},
          {"diverges", c.diverges},
          {"threshold", json_number(c.threshold)},
          {"window_minima", std::move(windows)}};
}

json to_json(const SuiteReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"check_name", c.name},
                      {"status", std::string(to_string(c.status))},
                      {"summary", c.summary},
                      {"numbers", c.numbers},
                      {"windows", c.windows}});
  return {{"schema", 1},
          {"suite", report.suite},
          {"config", to_json(report.config)},
          {"counts",
           {{"pass", report.count(CheckStatus::Pass)},
            {"fail", report.count(CheckStatus::Fail)},
            {"hypothesis-violated", report.count(CheckStatus::HypothesisViolated)}}},
          {"checks", std::move(checks)}};
}

}  // namespace logconvex
