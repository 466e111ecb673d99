#pragma once

// Finite-window estimates of the behaviour of sampled functions at 0+ and
// +inf: the slope a_hat = liminf f(x)/x, the residual liminf (f(x) - a_hat x),
// and the resulting class Phi1 / Phi2 / Phi3.
//
// Every limit is an estimate relative to declared windows. The head (tail)
// window is the first (last) `tail_fraction` of the knots, split into
// `sub_windows` contiguous runs ordered toward the end they approach. A
// windowed sequence "diverges" when it grows strictly with non-shrinking
// increments, or when its last entry passes `divergence_threshold`.

#include "logconvex/envelope.hpp"
#include "logconvex/funcspace.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace logconvex {

struct ClassifyConfig {
  double tail_fraction = 0.25;
  int sub_windows = 3;
  double divergence_threshold = 1e6;
  double agreement_tolerance = 1e-3;  // used by the envelope invariance comparisons
};

/// Throws std::invalid_argument on out-of-range settings.
void validate(const ClassifyConfig& config);

/// Knot index range [first, last] and its abscissae.
struct IndexWindow {
  Eigen::Index first = 0;
  Eigen::Index last = 0;
  double x_lo = 0.0;
  double x_hi = 0.0;
};

enum class PhiClass { Phi1, Phi2, Phi3, NotPhi };
std::string_view to_string(PhiClass c);

struct AsymptoticProfile {
  double a_hat = 0.0;                     // +inf when Phi1
  std::optional<double> residual_liminf;  // -inf when Phi2; empty when a_hat is +inf
  double limit_at_zero = 0.0;             // +inf when the head diverges
  bool phi_member = true;
  PhiClass phi_class = PhiClass::Phi3;
  std::vector<IndexWindow> head_windows;  // ordered toward 0+
  std::vector<IndexWindow> tail_windows;  // ordered toward +inf
};

struct OneSidedDerivatives {
  double left = 0.0;
  double right = 0.0;
  Eigen::Index at = 0;
};

/// psi_hat(x_i) = g(x_i) - g'(x_i^-) x_i. The first knot has no left chord and
/// uses its right one instead. `rounding_bound[i]` bounds the floating-point
/// error of entry i.
struct PsiHat {
  SampledFunction values;
  Eigen::ArrayXd rounding_bound;
  bool first_uses_right_slope = true;
};

std::vector<IndexWindow> tail_windows(const Grid& grid, double tail_fraction, int sub_windows);
std::vector<IndexWindow> head_windows(const Grid& grid, double tail_fraction, int sub_windows);

/// True when `seq` grows without bound toward its end (see file comment).
bool trend_diverges(std::span<const double> seq, double threshold);

/// As above, where a step only counts as growth when it exceeds the summed
/// absolute uncertainties `noise` of its two entries.
bool trend_diverges(std::span<const double> seq, double threshold, std::span<const double> noise);

/// Slope of the lower hull entering the last knot, or +inf when hull slopes at
/// the tail sub-window ends diverge. For convex input this is the last chord slope.
double estimate_a_hat(const SampledFunction& f, double tail_fraction, const ClassifyConfig& config = {});

/// Minimum of f(x) - a x over the last tail sub-window, or -inf when the
/// sub-window minima fall without bound.
double estimate_residual(const SampledFunction& f, double a, double tail_fraction,
                         const ClassifyConfig& config = {});

/// Minimum of f over the head sub-window touching x_min, or +inf when the
/// head minima diverge toward 0+.
double estimate_limit_at_zero(const SampledFunction& f, const ClassifyConfig& config = {});

AsymptoticProfile classify(const SampledFunction& f, const ClassifyConfig& config = {});

OneSidedDerivatives one_sided_derivatives(const ConvexSampledFunction& g, Eigen::Index i);

/// Throws std::invalid_argument for fewer than three knots.
PsiHat psi_hat(const ConvexSampledFunction& g);

/// Non-increasing up to the per-entry rounding bounds.
bool is_non_increasing(const PsiHat& p);

struct ClassInvarianceReport {
  PhiClass class_f = PhiClass::Phi3;
  PhiClass class_envelope = PhiClass::Phi3;
  bool agree = false;
};

ClassInvarianceReport check_class_invariance(const SampledFunction& f, const ClassifyConfig& config = {});

/// Compares the head liminf and a_hat of f with those of its envelope, plus the
/// direct tail ratio liminf f(x)/x (minimum over the last sub-window).
struct Lemma41Report {
  double head_f = 0.0, head_envelope = 0.0, head_delta = 0.0;
  double a_hat_f = 0.0, a_hat_envelope = 0.0, a_hat_delta = 0.0;
  double ratio_f = 0.0, ratio_envelope = 0.0, ratio_delta = 0.0;
  bool agree = false;
};

Lemma41Report lemma41_check(const SampledFunction& f, const ClassifyConfig& config = {});

/// Consistency of the class with the tail behaviour of psi_hat of the envelope:
/// bounded psi_hat with finite a_hat forces Phi3, Phi2 forces psi_hat to fall
/// without bound.
struct Lemma45Report {
  PhiClass phi_class = PhiClass::Phi3;
  std::vector<double> psi_hat_window_minima;
  bool psi_hat_bounded = true;
  bool consistent = false;
};

Lemma45Report lemma45_check(const SampledFunction& f, const ClassifyConfig& config = {});

/// |a - b|, with two equal infinities at distance 0 and mixed ones at +inf.
double extended_distance(double a, double b);

}  // namespace logconvex
