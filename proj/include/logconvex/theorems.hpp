#pragma once

// Executable checks of the inf-gap theorems for pairs (phi, psi) and of the
// two oscillatory counterexample families.
//
// "Limit = +inf" at an end is witnessed by a DivergenceCertificate: minima of
// phi - psi over decade windows approaching that end, strictly increasing and
// ending above a threshold. Checks whose hypotheses fail report
// HypothesisViolated and never assert their conclusion.

#include "logconvex/asymptotics.hpp"
#include "logconvex/envelope.hpp"
#include "logconvex/funcspace.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace logconvex {

enum class CheckStatus { Pass, Fail, HypothesisViolated };

/// "pass", "fail", "hypothesis-violated".
std::string_view to_string(CheckStatus s);

struct GapMinimum {
  double value = 0.0;
  double argmin = 0.0;
  Eigen::Index index = 0;
};

/// Discrete minimum of phi - psi; ties go to the smaller abscissa.
/// Throws std::invalid_argument when the grids differ.
GapMinimum inf_gap(const SampledFunction& phi, const SampledFunction& psi);

struct GapReport {
  double inf_gap_raw = 0.0;
  double inf_gap_envelope = 0.0;
  double argmin_raw = 0.0;
  double argmin_envelope = 0.0;
  double tolerance = 0.0;
  bool psi_convex = false;
  bool equal_within_tol = false;
  CheckStatus status = CheckStatus::Fail;
};

/// Compares inf(phi - psi) with inf(phi** - psi). Equality is asserted only
/// for discretely convex psi; the tolerance is `gap_tol` plus rounding.
GapReport theorem31_check(const SampledFunction& phi, const SampledFunction& psi, double gap_tol = 1e-6);

/// Same, with phi** supplied by the caller (e.g. a padded envelope).
GapReport theorem31_check(const SampledFunction& phi, const ConvexSampledFunction& phi_envelope,
                          const SampledFunction& psi, double gap_tol = 1e-6);

enum class End { AtZero, AtInfinity };
std::string_view to_string(End e);

struct CertificateConfig {
  double ratio = 10.0;     // window i spans a factor `ratio` in x
  int windows = 3;
  double threshold = 1e3;
};

struct GapWindow {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double min_gap = 0.0;
  double argmin = 0.0;
};

struct DivergenceCertificate {
  End end = End::AtZero;
  std::vector<GapWindow> window_minima;  // farthest from the end first
  bool diverges = false;
  double threshold = 0.0;
};

/// Windows [x0 r^j, x0 r^(j+1)] from the grid end x0 (mirrored at +inf).
/// Throws std::invalid_argument when the grid cannot hold the windows.
DivergenceCertificate divergence_certificate(const SampledFunction& phi, const SampledFunction& psi, End end,
                                             const CertificateConfig& config = {});

struct CheckConfig {
  ClassifyConfig classify;
  CertificateConfig certificate;
  double gap_tol = 1e-6;
};

struct DivergenceCheckReport {
  CheckStatus status = CheckStatus::Fail;
  End end = End::AtZero;
  bool psi_convex = false;
  std::optional<PhiClass> psi_class;  // set by the +inf checks
  DivergenceCertificate raw;          // phi - psi
  DivergenceCertificate envelope;     // phi** - psi, or phi** - psi** for the corollaries
  std::string note;
};

/// Divergence at 0+ carries over from phi - psi to phi** - psi for convex psi.
DivergenceCheckReport theorem32_check(const SampledFunction& phi, const SampledFunction& psi,
                                      const CheckConfig& config = {});

/// Divergence at +inf carries over for convex psi outside the bounded-residual class.
DivergenceCheckReport theorem33_check(const SampledFunction& phi, const SampledFunction& psi,
                                      const CheckConfig& config = {});

/// Divergence of phi** - psi** at `end`, without convexity of psi.
DivergenceCheckReport corollary_checks(const SampledFunction& phi, const SampledFunction& psi, End end,
                                       const CheckConfig& config = {});

enum class CounterexampleFamily { Prop41, Prop42 };
std::string_view to_string(CounterexampleFamily f);

struct CounterexamplePoints {
  CounterexampleFamily family = CounterexampleFamily::Prop41;
  long k_first = 0;
  long k_last = 0;
  std::vector<double> x_touch;       // x_k
  std::vector<double> x_mid;         // x~_k
  std::vector<double> bound_values;  // upper bound of phi**(x~_k) - psi(x~_k)
};

/// k = 0 .. k_max-1. Throws std::invalid_argument for k_max < 1.
CounterexamplePoints counterexample_points(CounterexampleFamily family, long k_max);
/// k = k_first .. k_last inclusive.
CounterexamplePoints counterexample_points(CounterexampleFamily family, long k_first, long k_last);

/// The convex function the envelope touches at every x_k, and phi, psi of the family.
double counterexample_minorant(CounterexampleFamily family, double x);
AnalyticFunction counterexample_phi(CounterexampleFamily family);
AnalyticFunction counterexample_psi(CounterexampleFamily family);

struct CounterexamplePointCheck {
  long k = 0;
  double x_touch = 0.0;
  double x_mid = 0.0;
  double touch_envelope = 0.0;
  double touch_expected = 0.0;
  double touch_rel_error = 0.0;
  double envelope_gap = 0.0;  // phi**(x~_k) - psi(x~_k)
  double chord_gap = 0.0;     // chord of the minorant over [x_{k+1}, x_k] minus psi, at x~_k
  double bound = 0.0;
  double raw_gap = 0.0;
  double raw_expected = 0.0;
  bool touch_ok = false;
  bool bound_ok = false;
  bool raw_ok = false;
};

struct CounterexampleReport {
  CounterexampleFamily family = CounterexampleFamily::Prop41;
  std::vector<CounterexamplePointCheck> points;
  double second_difference_at_mid0 = 0.0;  // psi'' at x~_0 estimate; negative witnesses non-convexity
  bool witness_negative = false;
  bool all_ok = false;
};

/// Checks touch, bound and raw-gap identities for k in [k_first, k_last] on
/// the envelope of phi over `grid`. The grid must contain x_k, x~_k for those
/// k and x_{k_last+1}; throws std::invalid_argument otherwise.
CounterexampleReport verify_counterexample(CounterexampleFamily family, long k_first, long k_last,
                                           const Grid& grid);

/// Grid for the family: log fill, exact critical points, 32 knots per period.
Grid counterexample_grid(CounterexampleFamily family, double x_min, double x_max, Eigen::Index n = 4096);

/// phi** of an analytic phi, computed on `grid` widened by `pad_decades` on
/// both sides and restricted back to `grid`. Reduces the distortion the
/// window edges impose on the hull.
ConvexSampledFunction padded_envelope(const AnalyticFunction& phi, const Grid& grid, double pad_decades = 6.0,
                                      Eigen::Index knots_per_decade = 256);

}  // namespace logconvex
