#include "logconvex/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace logconvex {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Strict growth must beat rounding noise on the compared entries.
bool materially_greater(double next, double prev) {
  const double scale = std::max({1.0, std::abs(next), std::abs(prev)});
  return next - prev > 1e-9 * scale;
}

std::vector<IndexWindow> split(const Grid& grid, Eigen::Index first, Eigen::Index count, int parts) {
  std::vector<IndexWindow> out;
  for (int j = 0; j < parts; ++j) {
    const Eigen::Index lo = first + (count * j) / parts;
    const Eigen::Index hi = first + (count * (j + 1)) / parts - 1;
    out.push_back({lo, hi, grid[lo], grid[hi]});
  }
  return out;
}

Eigen::Index window_count(const Grid& grid, double tail_fraction, int sub_windows) {
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) throw std::invalid_argument("tail_fraction must lie in (0, 1)");
  if (sub_windows < 3) throw std::invalid_argument("at least three sub-windows are required");
  const auto m = static_cast<Eigen::Index>(std::ceil(tail_fraction * static_cast<double>(grid.size())));
  if (m < 8 || m < 2 * sub_windows) throw std::invalid_argument("tail window too small: needs at least 8 knots");
  return m;
}

template <typename Fn>
std::vector<double> window_minima(const std::vector<IndexWindow>& windows, Fn value) {
  std::vector<double> out;
  for (const auto& w : windows) {
    double m = kInf;
    for (Eigen::Index i = w.first; i <= w.last; ++i) m = std::min(m, value(i));
    out.push_back(m);
  }
  return out;
}

// Minima of psi_hat over each window and the rounding bound at each minimizer.
void psi_hat_minima(const PsiHat& ph, const std::vector<IndexWindow>& windows, std::vector<double>& minima,
                    std::vector<double>& noise) {
  for (const auto& w : windows) {
    Eigen::Index best = w.first;
    for (Eigen::Index i = w.first; i <= w.last; ++i)
      if (ph.values.value(i) < ph.values.value(best)) best = i;
    minima.push_back(ph.values.value(best));
    noise.push_back(ph.rounding_bound[best]);
  }
}

std::vector<double> negated(std::vector<double> v) {
  for (auto& x : v) x = -x;
  return v;
}

double left_slope(const SampledFunction& g, Eigen::Index i) {
  return (g.value(i) - g.value(i - 1)) / (g.x(i) - g.x(i - 1));
}

}  // namespace

void validate(const ClassifyConfig& config) {
  if (!(config.tail_fraction > 0.0 && config.tail_fraction < 1.0))
    throw std::invalid_argument("tail_fraction must lie in (0, 1)");
  if (config.sub_windows < 3) throw std::invalid_argument("sub_windows must be at least 3");
  if (!(config.divergence_threshold > 0.0)) throw std::invalid_argument("class threshold must be positive");
  if (!(config.agreement_tolerance > 0.0)) throw std::invalid_argument("agreement tolerance must be positive");
}

std::string_view to_string(PhiClass c) {
  switch (c) {
    case PhiClass::Phi1: return "Phi1";
    case PhiClass::Phi2: return "Phi2";
    case PhiClass::Phi3: return "Phi3";
    case PhiClass::NotPhi: return "NotPhi";
  }
  return "NotPhi";
}

std::vector<IndexWindow> tail_windows(const Grid& grid, double tail_fraction, int sub_windows) {
  const Eigen::Index m = window_count(grid, tail_fraction, sub_windows);
  return split(grid, grid.size() - m, m, sub_windows);
}

std::vector<IndexWindow> head_windows(const Grid& grid, double tail_fraction, int sub_windows) {
  const Eigen::Index m = window_count(grid, tail_fraction, sub_windows);
  auto w = split(grid, 0, m, sub_windows);
  std::reverse(w.begin(), w.end());
  return w;
}

bool trend_diverges(std::span<const double> seq, double threshold) {
  const std::vector<double> none(seq.size(), 0.0);
  return trend_diverges(seq, threshold, none);
}

bool trend_diverges(std::span<const double> seq, double threshold, std::span<const double> noise) {
  if (noise.size() != seq.size()) throw std::invalid_argument("noise and sequence lengths differ");
  if (seq.empty()) return false;
  if (seq.back() >= threshold) return true;
  if (seq.size() < 3) return false;
  for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
    if (!materially_greater(seq[j + 1], seq[j]) || seq[j + 1] - seq[j] <= noise[j] + noise[j + 1]) return false;
  }
  for (std::size_t j = 0; j + 2 < seq.size(); ++j) {
    const double inc = seq[j + 1] - seq[j];
    const double next = seq[j + 2] - seq[j + 1];
    if (next < inc * (1.0 - 1e-9)) return false;
  }
  return true;
}

double estimate_a_hat(const SampledFunction& f, double tail_fraction, const ClassifyConfig& config) {
  const auto windows = tail_windows(f.grid(), tail_fraction, config.sub_windows);
  const ConvexSampledFunction env = convex_envelope(f);
  std::vector<double> slopes;
  for (const auto& w : windows) slopes.push_back(left_slope(env.function(), w.last));
  if (trend_diverges(slopes, config.divergence_threshold)) return kInf;
  return slopes.back();
}

double estimate_residual(const SampledFunction& f, double a, double tail_fraction, const ClassifyConfig& config) {
  if (!std::isfinite(a)) throw std::invalid_argument("residual slope must be finite");
  const auto windows = tail_windows(f.grid(), tail_fraction, config.sub_windows);
  const auto minima = window_minima(windows, [&](Eigen::Index i) { return f.value(i) - a * f.x(i); });
  if (trend_diverges(negated(minima), config.divergence_threshold)) return -kInf;
  return minima.back();
}

double estimate_limit_at_zero(const SampledFunction& f, const ClassifyConfig& config) {
  const auto windows = head_windows(f.grid(), config.tail_fraction, config.sub_windows);
  const auto minima = window_minima(windows, [&](Eigen::Index i) { return f.value(i); });
  if (trend_diverges(minima, config.divergence_threshold)) return kInf;
  return minima.back();
}

AsymptoticProfile classify(const SampledFunction& f, const ClassifyConfig& config) {
  validate(config);
  AsymptoticProfile p;
  p.head_windows = head_windows(f.grid(), config.tail_fraction, config.sub_windows);
  p.tail_windows = tail_windows(f.grid(), config.tail_fraction, config.sub_windows);
  p.limit_at_zero = estimate_limit_at_zero(f, config);

  // Phi fails only through super-linear unboundedness below at an end.
  const auto head_min = window_minima(p.head_windows, [&](Eigen::Index i) { return f.value(i); });
  const auto ratio_min = window_minima(p.tail_windows, [&](Eigen::Index i) { return f.value(i) / f.x(i); });
  if (trend_diverges(negated(head_min), config.divergence_threshold) ||
      trend_diverges(negated(ratio_min), config.divergence_threshold)) {
    p.phi_member = false;
    p.phi_class = PhiClass::NotPhi;
    p.a_hat = -kInf;
    return p;
  }

  p.a_hat = estimate_a_hat(f, config.tail_fraction, config);
  if (std::isinf(p.a_hat)) {
    p.phi_class = PhiClass::Phi1;
    return p;
  }

  // Finite a_hat: the class follows the intercepts of the envelope's tangents.
  const PsiHat ph = psi_hat(convex_envelope(f));
  std::vector<double> q, noise;
  psi_hat_minima(ph, p.tail_windows, q, noise);
  if (trend_diverges(negated(q), config.divergence_threshold, noise)) {
    p.phi_class = PhiClass::Phi2;
    p.residual_liminf = -kInf;
  } else {
    p.phi_class = PhiClass::Phi3;
    p.residual_liminf = q.back();
  }
  return p;
}

OneSidedDerivatives one_sided_derivatives(const ConvexSampledFunction& g, Eigen::Index i) {
  if (i <= 0 || i + 1 >= g.size()) throw std::out_of_range("one-sided derivatives need an interior knot");
  const SampledFunction& f = g.function();
  return {left_slope(f, i), left_slope(f, i + 1), i};
}

PsiHat psi_hat(const ConvexSampledFunction& g) {
  const SampledFunction& f = g.function();
  const Eigen::Index n = f.size();
  if (n < 3) throw std::invalid_argument("psi_hat needs at least three knots");
  Eigen::ArrayXd v(n), bound(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = std::max<Eigen::Index>(i, 1);  // chord (j-1, j)
    const double s = left_slope(f, j);
    v[i] = f.value(i) - s * f.x(i);
    const double leverage = f.x(i) / (f.x(j) - f.x(j - 1));
    bound[i] = kRoundingUlps * (std::abs(f.value(i)) +
                                (std::abs(f.value(j)) + std::abs(f.value(j - 1))) * leverage +
                                std::abs(s * f.x(i)));
  }
  return {SampledFunction(f.grid(), std::move(v)), std::move(bound), true};
}

bool is_non_increasing(const PsiHat& p) {
  const auto& v = p.values.values();
  for (Eigen::Index i = 0; i + 1 < v.size(); ++i) {
    if (v[i + 1] > v[i] + p.rounding_bound[i] + p.rounding_bound[i + 1]) return false;
  }
  return true;
}

ClassInvarianceReport check_class_invariance(const SampledFunction& f, const ClassifyConfig& config) {
  ClassInvarianceReport r;
  r.class_f = classify(f, config).phi_class;
  r.class_envelope = classify(convex_envelope(f).function(), config).phi_class;
  r.agree = r.class_f == r.class_envelope;
  return r;
}

double extended_distance(double a, double b) {
  if (a == b) return 0.0;
  if (std::isinf(a) || std::isinf(b)) return kInf;
  return std::abs(a - b);
}

Lemma41Report lemma41_check(const SampledFunction& f, const ClassifyConfig& config) {
  validate(config);
  const SampledFunction env = convex_envelope(f).function();
  const auto windows = tail_windows(f.grid(), config.tail_fraction, config.sub_windows);
  auto last_ratio = [&](const SampledFunction& h) {
    const auto& w = windows.back();
    double m = kInf;
    for (Eigen::Index i = w.first; i <= w.last; ++i) m = std::min(m, h.value(i) / h.x(i));
    return m;
  };

  Lemma41Report r;
  r.head_f = estimate_limit_at_zero(f, config);
  r.head_envelope = estimate_limit_at_zero(env, config);
  r.head_delta = extended_distance(r.head_f, r.head_envelope);
  r.a_hat_f = estimate_a_hat(f, config.tail_fraction, config);
  r.a_hat_envelope = estimate_a_hat(env, config.tail_fraction, config);
  r.a_hat_delta = extended_distance(r.a_hat_f, r.a_hat_envelope);
  r.ratio_f = last_ratio(f);
  r.ratio_envelope = last_ratio(env);
  r.ratio_delta = extended_distance(r.ratio_f, r.ratio_envelope);
  const double tol = config.agreement_tolerance;
  r.agree = r.head_delta <= tol && r.a_hat_delta <= tol && (std::isinf(r.a_hat_f) || r.ratio_delta <= tol);
  return r;
}

Lemma45Report lemma45_check(const SampledFunction& f, const ClassifyConfig& config) {
  Lemma45Report r;
  r.phi_class = classify(f, config).phi_class;
  const PsiHat ph = psi_hat(convex_envelope(f));
  const auto windows = tail_windows(f.grid(), config.tail_fraction, config.sub_windows);
  std::vector<double> noise;
  psi_hat_minima(ph, windows, r.psi_hat_window_minima, noise);
  r.psi_hat_bounded = !trend_diverges(negated(r.psi_hat_window_minima), config.divergence_threshold, noise);
  switch (r.phi_class) {
    case PhiClass::Phi2: r.consistent = !r.psi_hat_bounded; break;
    case PhiClass::Phi3: r.consistent = r.psi_hat_bounded; break;
    default: r.consistent = true; break;
  }
  return r;
}

}  // namespace logconvex
