// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "logconvex/asymptotics.hpp"
#include "logconvex/instances.hpp"
#include "logconvex/theorems.hpp"
#include "logconvex/weighted.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace logconvex;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
int failures = 0;

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << "  AC" << id << (id < 10 ? "  " : " ") << title << ": " << detail << '\n';
}

template <typename Fn>
void criterion(int id, const std::string& title, Fn fn) {
  try {
    std::string detail;
    const bool ok = fn(detail);
    report(id, title, ok, detail);
  } catch (const std::exception& e) {
    report(id, title, false, std::string("exception: ") + e.what());
  }
}

AnalyticFunction cat(CatalogKind k) { return AnalyticFunction::catalog(k); }

double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), std::numeric_limits<double>::min()});
}

bool has_quadratic_oscillation(const AnalyticFunction& f) {
  for (CatalogKind k : f.components())
    if (k == CatalogKind::Prop42Phi || k == CatalogKind::Prop42Psi) return true;
  return false;
}

bool ac1(std::string& d) {
  const Grid g = make_log_grid(1e-3, 1e3, 8192);
  const SampledFunction phi = sample(cat(CatalogKind::Ex31Phi), g), psi = sample(cat(CatalogKind::Ex31Psi), g);
  const double raw = inf_gap(phi, psi).value;
  const ConvexSampledFunction env = padded_envelope(cat(CatalogKind::Ex31Phi), g);
  const double low = inf_gap(env.function(), psi).value;
  d = "inf(phi-psi)=" + num(raw) + " inf(phi**-psi)=" + num(low);
  return std::abs(raw - 1.0) <= 2e-3 && low >= -1e-12 && low <= 2e-3;
}

bool ac2(std::string& d) {
  const Grid g = grid_union(make_log_grid(1e-8, 1e2, 4096).view(), std::vector<double>{1.0, 2.0});
  const SampledFunction phi = sample(cat(CatalogKind::Ex33Phi), g), psi = sample(cat(CatalogKind::Ex33Psi), g);
  const GapMinimum raw = inf_gap(phi, psi);
  const ConvexSampledFunction pe = convex_envelope(phi), qe = convex_envelope(psi);
  const double env = inf_gap(pe.function(), qe.function()).value;
  double dev = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double x = g[i];
    if (x < 1e-2) continue;
    const double expect = x <= 2.0 ? -1.0 : x * x + x - 7.0;
    dev = std::max(dev, std::abs(qe.values()[i] - expect));
  }
  d = "inf(phi-psi)=" + num(raw.value) + " at x=" + num(raw.argmin) + ", inf(phi**-psi**)=" + num(env) +
      ", max |psi**-closed form|=" + num(dev);
  return std::abs(raw.value) <= 1e-9 && raw.argmin == 1.0 && std::abs(env - 1.0) <= 1e-3 && dev <= 1e-6;
}

bool family_bounds(CounterexampleFamily fam, const Grid& g, std::string& d) {
  const CounterexampleReport r = verify_counterexample(fam, 1, 10, g);
  bool ok = r.points.size() == 10;
  double worst_margin = std::numeric_limits<double>::infinity(), worst_touch = 0.0, worst_raw = 0.0;
  for (const auto& p : r.points) {
    const double bound = fam == CounterexampleFamily::Prop41 ? (3.0 + p.x_mid) * kPi2 : kPi2;
    const double raw_expect = fam == CounterexampleFamily::Prop41 ? 2.0 / p.x_mid : 2.0 * p.x_mid;
    const double touch = rel_diff(p.touch_envelope, counterexample_minorant(fam, p.x_touch));
    ok = ok && p.envelope_gap >= 0.0 && p.envelope_gap <= bound + 1e-6 && touch <= 1e-6;
    if (fam == CounterexampleFamily::Prop42) ok = ok && rel_diff(p.raw_gap, raw_expect) <= 1e-12;
    worst_margin = std::min(worst_margin, bound + 1e-6 - p.envelope_gap);
    worst_touch = std::max(worst_touch, touch);
    worst_raw = std::max(worst_raw, rel_diff(p.raw_gap, raw_expect));
  }
  d = "k=1..10, min bound margin " + num(worst_margin) + ", max touch error " + num(worst_touch) +
      ", max raw-gap error " + num(worst_raw);
  return ok;
}

bool ac5(std::string& d) {
  const Grid g = make_log_grid(1e-3, 1e6, 8192);
  const AsymptoticProfile sq = classify(sample(cat(CatalogKind::Square), g));
  const AsymptoticProfile xs = classify(sample(cat(CatalogKind::XMinusSqrtX), g));
  const AsymptoticProfile rc = classify(sample(cat(CatalogKind::Reciprocal), g));
  const double resid = rc.residual_liminf.value_or(std::numeric_limits<double>::quiet_NaN());
  d = std::string(to_string(sq.phi_class)) + ", " + std::string(to_string(xs.phi_class)) + " (a_hat " +
      num(xs.a_hat) + "), " + std::string(to_string(rc.phi_class)) + " (residual " + num(resid) + ")";
  return sq.phi_class == PhiClass::Phi1 && xs.phi_class == PhiClass::Phi2 && std::abs(xs.a_hat - 1.0) <= 2e-3 &&
         rc.phi_class == PhiClass::Phi3 && std::abs(resid) <= 1e-3;
}

bool ac6(std::string& d) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> knots(3, 200);
  int bad = 0;
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const Grid g = random_grid(rng, knots(rng));
    const SampledFunction phi = random_piecewise(rng, g);
    const SampledFunction psi = random_convex(rng, g);
    const GapReport r = theorem31_check(phi, psi);
    const double diff = std::abs(r.inf_gap_raw - r.inf_gap_envelope);
    worst = std::max(worst, diff);
    if (!r.psi_convex || diff > 1e-6) ++bad;
  }
  d = std::to_string(bad) + " of 500 pairs failed, max |difference| " + num(worst);
  return bad == 0;
}

double envelope_vs_legendre(const SampledFunction& f, bool& idempotent) {
  const ConvexSampledFunction a = convex_envelope(f), b = biconjugate_via_legendre(f);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) worst = std::max(worst, rel_diff(a.values()[i], b.values()[i]));
  idempotent = idempotent && (convex_envelope(a.function()).values() == a.values()).all();
  return worst;
}

bool ac7(std::string& d) {
  bool idem = true;
  double worst = 0.0;
  for (const auto& f : catalog_functions())
    worst = std::max(worst, envelope_vs_legendre(sample(f, catalog_grid(f, 1e-3, 1e3, 4096)), idem));
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> knots(3, 200);
  for (int t = 0; t < 200; ++t) {
    const Grid g = random_grid(rng, knots(rng));
    worst = std::max(worst, envelope_vs_legendre(random_piecewise(rng, g), idem));
  }
  d = "12 catalog + 200 random, max relative difference " + num(worst) + (idem ? ", idempotent" : ", NOT idempotent");
  return worst <= 1e-9 && idem;
}

bool ac8(std::string& d) {
  int bad = 0;
  for (const auto& f : catalog_functions())
    if (!is_non_increasing(psi_hat(convex_envelope(sample(f, catalog_grid(f, 1e-3, 1e3, 4096)))))) ++bad;
  std::mt19937_64 rng(44);
  std::uniform_int_distribution<int> knots(3, 200);
  for (int t = 0; t < 200; ++t) {
    const Grid g = random_grid(rng, knots(rng));
    if (!is_non_increasing(psi_hat(convex_envelope(random_piecewise(rng, g))))) ++bad;
  }
  d = std::to_string(bad) + " of 212 envelopes have increasing psi_hat";
  return bad == 0;
}

bool ac9(std::string& d) {
  int bad = 0;
  double worst_head = 0.0, worst_slope = 0.0;
  for (const auto& f : catalog_functions()) {
    const SampledFunction s = sample(f, catalog_grid(f, 1e-3, has_quadratic_oscillation(f) ? 1e4 : 1e6, 8192));
    const Lemma41Report l = lemma41_check(s);
    const ClassInvarianceReport c = check_class_invariance(s);
    if (!(l.agree && c.agree && l.head_delta <= 1e-3 && l.a_hat_delta <= 1e-3)) ++bad;
    if (std::isfinite(l.head_delta)) worst_head = std::max(worst_head, l.head_delta);
    if (std::isfinite(l.a_hat_delta)) worst_slope = std::max(worst_slope, l.a_hat_delta);
  }
  d = std::to_string(bad) + " of 12 disagree, max head delta " + num(worst_head) + ", max a_hat delta " +
      num(worst_slope);
  return bad == 0;
}

bool ac10(std::string& d) {
  int bad = 0, rows = 0;
  double worst = 0.0;
  for (const auto& phi : catalog_functions()) {
    const RadialWeight v = weight_from_log_profile(sample(phi, catalog_grid(phi, 1e-3, 1e3, 4096)));
    const Theorem61Report r = theorem61_check(v, holo_catalog());
    for (const auto& row : r.rows) {
      ++rows;
      const bool same_verdict = row.under_v.finite == row.under_w.finite;
      if (!(row.agree && same_verdict)) ++bad;
      worst = std::max(worst, row.relative_difference);
    }
  }
  d = std::to_string(bad) + " of " + std::to_string(rows) + " pairs disagree, max relative difference " + num(worst);
  return bad == 0 && rows == 60;
}

bool ac11(std::string& d) {
  int weights = 0, bad = 0, rows = 0;
  for (const auto& phi : catalog_functions()) {
    const RadialWeight v = weight_from_log_profile(sample(phi, catalog_grid(phi, 1e-5, 1e5, 4096)));
    if (!nontriviality(v).hv0_nontrivial) continue;
    ++weights;
    const Theorem62Report r = theorem62_check(v, holo_catalog());
    for (const auto& row : r.rows) {
      ++rows;
      if (row.under_v.member != row.under_w.member) ++bad;
    }
    if (r.status != CheckStatus::Pass) ++bad;
  }
  d = std::to_string(weights) + " weights with phi(0+)=+inf, " + std::to_string(rows) + " verdict pairs, " +
      std::to_string(bad) + " disagreements";
  return weights > 0 && bad == 0;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LOGCONVEX_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool ac12(std::string& d) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "logconvex_acceptance_a.json", b = dir / "logconvex_acceptance_b.json";
  const int ca = run_cli("verify --suite paper --json " + a.string());
  const int cb = run_cli("verify --suite paper --json " + b.string());
  const std::string ja = slurp(a), jb = slurp(b);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  const bool same = !ja.empty() && ja == jb;
  d = "exit codes " + std::to_string(ca) + ", " + std::to_string(cb) + "; reports " +
      (same ? "byte-identical (" + std::to_string(ja.size()) + " bytes)" : std::string("differ"));
  return ca == 0 && cb == 0 && same;
}

}  // namespace

int main() {
  criterion(1, "truncated-minimum pair gaps", ac1);
  criterion(2, "piecewise pair gaps and psi**", ac2);
  criterion(3, "reciprocal oscillation bounds", [](std::string& d) {
    return family_bounds(CounterexampleFamily::Prop41, counterexample_grid(CounterexampleFamily::Prop41, 1e-5, 1e2), d);
  });
  criterion(4, "quadratic oscillation bounds", [](std::string& d) {
    return family_bounds(CounterexampleFamily::Prop42, counterexample_grid(CounterexampleFamily::Prop42, 1e-3, 1e4), d);
  });
  criterion(5, "classification triple", ac5);
  criterion(6, "gap equality for convex psi", ac6);
  criterion(7, "envelope vs Legendre biconjugate", ac7);
  criterion(8, "psi_hat monotone on envelopes", ac8);
  criterion(9, "head limit, slope and class survive the envelope", ac9);
  criterion(10, "norms under the associated weight", ac10);
  criterion(11, "little-space verdicts under the associated weight", ac11);
  criterion(12, "verify exit status and deterministic report", ac12);
  std::cout << (12 - failures) << " of 12 criteria pass\n";
  return failures == 0 ? 0 : 1;
}
