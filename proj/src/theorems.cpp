#include "logconvex/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace logconvex {
namespace {

constexpr double kPi = std::numbers::pi;

void require_same_grid(const SampledFunction& a, const SampledFunction& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("phi and psi are sampled on different grids");
}

bool is_phi_minus_bounded(PhiClass c) { return c == PhiClass::Phi1 || c == PhiClass::Phi2; }

double relative_error(double value, double expected) {
  return std::abs(value - expected) / std::max(std::abs(expected), std::numeric_limits<double>::min());
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::HypothesisViolated: return "hypothesis-violated";
  }
  return "fail";
}

std::string_view to_string(End e) { return e == End::AtZero ? "at_zero" : "at_infinity"; }

std::string_view to_string(CounterexampleFamily f) {
  return f == CounterexampleFamily::Prop41 ? "prop41" : "prop42";
}

GapMinimum inf_gap(const SampledFunction& phi, const SampledFunction& psi) {
  require_same_grid(phi, psi);
  GapMinimum best{std::numeric_limits<double>::infinity(), phi.x(0), 0};
  for (Eigen::Index i = 0; i < phi.size(); ++i) {
    const double d = phi.value(i) - psi.value(i);
    if (d < best.value) best = {d, phi.x(i), i};
  }
  return best;
}

GapReport theorem31_check(const SampledFunction& phi, const ConvexSampledFunction& phi_envelope,
                          const SampledFunction& psi, double gap_tol) {
  if (!(gap_tol > 0.0)) throw std::invalid_argument("gap tolerance must be positive");
  require_same_grid(phi, psi);
  require_same_grid(phi_envelope.function(), psi);
  const GapMinimum raw = inf_gap(phi, psi);
  const GapMinimum env = inf_gap(phi_envelope.function(), psi);

  GapReport r;
  r.inf_gap_raw = raw.value;
  r.inf_gap_envelope = env.value;
  r.argmin_raw = raw.argmin;
  r.argmin_envelope = env.argmin;
  r.psi_convex = is_discretely_convex(psi);

  // The discrete identity is exact; allow for rounding at the two minimizers.
  double scale = 0.0;
  for (Eigen::Index i : {raw.index, env.index}) {
    scale = std::max({scale, std::abs(phi.value(i)), std::abs(psi.value(i)), std::abs(phi_envelope.values()[i])});
  }
  r.tolerance = gap_tol + 4.0 * kRoundingUlps * scale;
  r.equal_within_tol = std::abs(raw.value - env.value) <= r.tolerance;
  if (!r.psi_convex) r.status = CheckStatus::HypothesisViolated;
  else r.status = r.equal_within_tol ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

GapReport theorem31_check(const SampledFunction& phi, const SampledFunction& psi, double gap_tol) {
  return theorem31_check(phi, convex_envelope(phi), psi, gap_tol);
}

DivergenceCertificate divergence_certificate(const SampledFunction& phi, const SampledFunction& psi, End end,
                                             const CertificateConfig& config) {
  require_same_grid(phi, psi);
  if (config.windows < 3) throw std::invalid_argument("a divergence certificate needs at least three windows");
  if (!(config.ratio > 1.0)) throw std::invalid_argument("window ratio must exceed 1");
  if (!(config.threshold > 0.0)) throw std::invalid_argument("divergence threshold must be positive");

  const Grid& grid = phi.grid();
  const double span = std::pow(config.ratio, config.windows);
  const double slack = 1.0 + 1e-12;
  if (grid.back() * slack < grid.front() * span)
    throw std::invalid_argument("grid spans too few decades for the requested windows");

  DivergenceCertificate cert;
  cert.end = end;
  cert.threshold = config.threshold;
  for (int j = config.windows - 1; j >= 0; --j) {
    GapWindow w;
    if (end == End::AtZero) {
      w.x_lo = grid.front() * std::pow(config.ratio, j);
      w.x_hi = grid.front() * std::pow(config.ratio, j + 1);
    } else {
      w.x_lo = grid.back() / std::pow(config.ratio, j + 1);
      w.x_hi = grid.back() / std::pow(config.ratio, j);
    }
    w.min_gap = std::numeric_limits<double>::infinity();
    bool any = false;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      const double x = grid[i];
      if (x * slack < w.x_lo || x > w.x_hi * slack) continue;
      any = true;
      const double d = phi.value(i) - psi.value(i);
      if (d < w.min_gap) {
        w.min_gap = d;
        w.argmin = x;
      }
    }
    if (!any) throw std::invalid_argument("a certificate window contains no knots");
    cert.window_minima.push_back(w);
  }

  bool increasing = true;
  for (std::size_t j = 1; j < cert.window_minima.size(); ++j)
    increasing = increasing && cert.window_minima[j].min_gap > cert.window_minima[j - 1].min_gap;
  cert.diverges = increasing && cert.window_minima.back().min_gap >= config.threshold;
  return cert;
}

DivergenceCheckReport theorem32_check(const SampledFunction& phi, const SampledFunction& psi,
                                      const CheckConfig& config) {
  DivergenceCheckReport r;
  r.end = End::AtZero;
  r.psi_convex = is_discretely_convex(psi);
  r.raw = divergence_certificate(phi, psi, End::AtZero, config.certificate);
  r.envelope = divergence_certificate(convex_envelope(phi).function(), psi, End::AtZero, config.certificate);
  if (!r.psi_convex) {
    r.status = CheckStatus::HypothesisViolated;
    r.note = "psi is not discretely convex";
  } else if (!r.raw.diverges) {
    r.status = CheckStatus::HypothesisViolated;
    r.note = "raw gap divergence at 0+ not certified";
  } else {
    r.status = r.envelope.diverges ? CheckStatus::Pass : CheckStatus::Fail;
  }
  return r;
}

DivergenceCheckReport theorem33_check(const SampledFunction& phi, const SampledFunction& psi,
                                      const CheckConfig& config) {
  DivergenceCheckReport r;
  r.end = End::AtInfinity;
  r.psi_convex = is_discretely_convex(psi);
  r.psi_class = classify(psi, config.classify).phi_class;
  r.raw = divergence_certificate(phi, psi, End::AtInfinity, config.certificate);
  r.envelope = divergence_certificate(convex_envelope(phi).function(), psi, End::AtInfinity, config.certificate);
  if (!r.psi_convex) {
    r.status = CheckStatus::HypothesisViolated;
    r.note = "psi is not discretely convex";
  } else if (!is_phi_minus_bounded(*r.psi_class)) {
    r.status = CheckStatus::HypothesisViolated;
    r.note = "psi has bounded residual or is not in Phi";
  } else if (!r.raw.diverges) {
    r.status = CheckStatus::HypothesisViolated;
    r.note = "raw gap divergence at +inf not certified";
  } else {
    r.status = r.envelope.diverges ? CheckStatus::Pass : CheckStatus::Fail;
  }
  return r;
}

DivergenceCheckReport corollary_checks(const SampledFunction& phi, const SampledFunction& psi, End end,
                                       const CheckConfig& config) {
  DivergenceCheckReport r;
  r.end = end;
  r.psi_convex = is_discretely_convex(psi);
  r.raw = divergence_certificate(phi, psi, end, config.certificate);
  r.envelope = divergence_certificate(convex_envelope(phi).function(), convex_envelope(psi).function(), end,
                                      config.certificate);
  if (end == End::AtInfinity) r.psi_class = classify(psi, config.classify).phi_class;
  if (!r.raw.diverges) {
    r.status = CheckStatus::HypothesisViolated;
    r.note = "raw gap divergence not certified";
  } else if (r.psi_class && !is_phi_minus_bounded(*r.psi_class)) {
    r.status = CheckStatus::HypothesisViolated;
    r.note = "psi has bounded residual or is not in Phi";
  } else {
    r.status = r.envelope.diverges ? CheckStatus::Pass : CheckStatus::Fail;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Counterexample families

CounterexamplePoints counterexample_points(CounterexampleFamily family, long k_first, long k_last) {
  if (k_first < 0 || k_last < k_first) throw std::invalid_argument("counterexample index range is empty");
  CounterexamplePoints p;
  p.family = family;
  p.k_first = k_first;
  p.k_last = k_last;
  const bool reciprocal = family == CounterexampleFamily::Prop41;
  for (long k = k_first; k <= k_last; ++k) {
    const double xk = reciprocal ? prop41_touch(k) : prop42_touch(k);
    const double xn = reciprocal ? prop41_touch(k + 1) : prop42_touch(k + 1);
    const double mid = reciprocal ? prop41_mid(k) : prop42_mid(k);
    // Reciprocal family: x~_k is the harmonic mean of x_k and x_{k+1}, and the
    // points decrease. Quadratic family: arithmetic mean, increasing.
    const double mean = reciprocal ? 2.0 * xk * xn / (xk + xn) : 0.5 * (xk + xn);
    const bool ordered = reciprocal ? (xk > mid && mid > xn && xn > 0.0) : (xk < mid && mid < xn);
    if (!ordered || relative_error(mid, mean) > 1e-12)
      throw std::logic_error("counterexample point invariants violated");
    p.x_touch.push_back(xk);
    p.x_mid.push_back(mid);
    p.bound_values.push_back(reciprocal ? (3.0 + mid) * kPi * kPi : kPi * kPi);
  }
  return p;
}

CounterexamplePoints counterexample_points(CounterexampleFamily family, long k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  return counterexample_points(family, 0, k_max - 1);
}

double counterexample_minorant(CounterexampleFamily family, double x) {
  return family == CounterexampleFamily::Prop41 ? 1.0 / (x * x) + 1.0 / x : x * x + x;
}

AnalyticFunction counterexample_phi(CounterexampleFamily family) {
  return AnalyticFunction::catalog(family == CounterexampleFamily::Prop41 ? CatalogKind::Prop41Phi
                                                                          : CatalogKind::Prop42Phi);
}

AnalyticFunction counterexample_psi(CounterexampleFamily family) {
  return AnalyticFunction::catalog(family == CounterexampleFamily::Prop41 ? CatalogKind::Prop41Psi
                                                                          : CatalogKind::Prop42Psi);
}

Grid counterexample_grid(CounterexampleFamily family, double x_min, double x_max, Eigen::Index n) {
  return catalog_grid(counterexample_phi(family), x_min, x_max, n);
}

CounterexampleReport verify_counterexample(CounterexampleFamily family, long k_first, long k_last,
                                           const Grid& grid) {
  const CounterexamplePoints pts = counterexample_points(family, k_first, k_last + 1);
  auto knot = [&](double x) {
    const auto i = grid.find(x);
    if (!i) throw std::invalid_argument("grid is missing a critical point of the counterexample family");
    return *i;
  };
  for (double x : pts.x_touch) knot(x);
  for (std::size_t j = 0; j + 1 < pts.x_mid.size(); ++j) knot(pts.x_mid[j]);

  const AnalyticFunction phi = counterexample_phi(family);
  const AnalyticFunction psi = counterexample_psi(family);
  const ConvexSampledFunction env = convex_envelope(sample(phi, grid));

  CounterexampleReport r;
  r.family = family;
  r.all_ok = true;
  for (std::size_t j = 0; j + 1 < pts.x_touch.size(); ++j) {
    CounterexamplePointCheck c;
    c.k = k_first + static_cast<long>(j);
    c.x_touch = pts.x_touch[j];
    c.x_mid = pts.x_mid[j];
    c.bound = pts.bound_values[j];

    c.touch_envelope = env.values()[knot(c.x_touch)];
    c.touch_expected = counterexample_minorant(family, c.x_touch);
    c.touch_rel_error = relative_error(c.touch_envelope, c.touch_expected);
    c.touch_ok = c.touch_rel_error <= 1e-6;

    const double psi_mid = psi(c.x_mid);
    c.envelope_gap = env.values()[knot(c.x_mid)] - psi_mid;
    const double x_next = pts.x_touch[j + 1];
    const double t = (c.x_mid - c.x_touch) / (x_next - c.x_touch);
    const double chord = counterexample_minorant(family, c.x_touch) +
                         t * (counterexample_minorant(family, x_next) - counterexample_minorant(family, c.x_touch));
    c.chord_gap = chord - psi_mid;
    const double rounding = 4.0 * kRoundingUlps * std::abs(psi_mid);
    c.bound_ok = c.envelope_gap >= -rounding && c.envelope_gap <= c.bound + 1e-6;

    c.raw_gap = phi(c.x_mid) - psi_mid;
    c.raw_expected = family == CounterexampleFamily::Prop41 ? 2.0 / c.x_mid : 2.0 * c.x_mid;
    c.raw_ok = relative_error(c.raw_gap, c.raw_expected) <= 1e-12;

    r.all_ok = r.all_ok && c.touch_ok && c.bound_ok && c.raw_ok;
    r.points.push_back(c);
  }

  const double x0 = family == CounterexampleFamily::Prop41 ? prop41_mid(0) : prop42_mid(0);
  const double h = 1e-4 * x0;
  r.second_difference_at_mid0 = (psi(x0 + h) - 2.0 * psi(x0) + psi(x0 - h)) / (h * h);
  r.witness_negative = r.second_difference_at_mid0 < 0.0;
  return r;
}

ConvexSampledFunction padded_envelope(const AnalyticFunction& phi, const Grid& grid, double pad_decades,
                                      Eigen::Index knots_per_decade) {
  if (!(pad_decades > 0.0)) throw std::invalid_argument("padding must be positive");
  if (knots_per_decade < 2) throw std::invalid_argument("padding needs at least two knots per decade");
  if (phi.oscillatory()) throw std::invalid_argument("padding is not supported for oscillatory functions");
  const double factor = std::pow(10.0, pad_decades);
  const auto pad_knots = static_cast<Eigen::Index>(std::ceil(pad_decades * static_cast<double>(knots_per_decade)));
  const Grid left = make_log_grid(grid.front() / factor, grid.front(), pad_knots + 1);
  const Grid right = make_log_grid(grid.back(), grid.back() * factor, pad_knots + 1);

  std::vector<double> fill(left.view().begin(), left.view().end());
  fill.insert(fill.end(), right.view().begin(), right.view().end());
  std::vector<double> exact(grid.view().begin(), grid.view().end());
  const auto crit = critical_points(phi, grid.front() / factor, grid.back() * factor);
  exact.insert(exact.end(), crit.begin(), crit.end());
  std::sort(exact.begin(), exact.end());
  exact.erase(std::unique(exact.begin(), exact.end()), exact.end());

  const Grid wide = grid_union(fill, exact);
  return restrict_to(convex_envelope(sample(phi, wide)), grid);
}

}  // namespace logconvex
