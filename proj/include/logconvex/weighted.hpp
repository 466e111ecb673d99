#pragma once

// Radial weights on the upper half-plane, their log-profiles y -> -ln v(iy),
// associated log-concave weights, and norms of closed-form holomorphic
// functions in the weighted sup-norm spaces.
//
// Holomorphic functions enter only through psi_f(y) = ln sup_x |f(x+iy)|,
// which is known in closed form for the catalog below.

#include "logconvex/asymptotics.hpp"
#include "logconvex/envelope.hpp"
#include "logconvex/funcspace.hpp"
#include "logconvex/theorems.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace logconvex {

enum class WeightProvenance { FromWeightCSV, FromLogProfile, Associated };
std::string_view to_string(WeightProvenance p);

/// A weight v(x+iy) = v(iy) stored through its log-profile. Any finite profile
/// describes a strictly positive weight; weights() may underflow to 0 in double
/// precision where the profile is large.
class RadialWeight {
 public:
  RadialWeight(SampledFunction log_profile, WeightProvenance provenance);

  const SampledFunction& log_profile() const noexcept { return profile_; }
  const Grid& grid() const noexcept { return profile_.grid(); }
  WeightProvenance provenance() const noexcept { return provenance_; }
  Eigen::ArrayXd weights() const { return (-profile_.values()).exp(); }

 private:
  SampledFunction profile_;
  WeightProvenance provenance_;
};

/// Throws std::invalid_argument on non-positive or non-finite weights.
RadialWeight log_profile_of_weight(const Grid& grid, const Eigen::ArrayXd& weights);
RadialWeight weight_from_log_profile(SampledFunction profile);

/// w = exp(-phi**): the smallest log-concave majorant of v on the grid.
RadialWeight associated_weight(const RadialWeight& v);

enum class HoloKind { ExpLinear, CayleyPower, Product };

/// f(z) = e^{iaz}, (z+i)^{-n}, or their product; a > 0, n >= 1.
class CatalogHoloFunction {
 public:
  static CatalogHoloFunction exp_linear(double a);
  static CatalogHoloFunction cayley_power(int n);
  static CatalogHoloFunction product(double a, int n);

  /// "exp_iaz:a=<float>", "cayley_pow:n=<int>", "product:a=<float>,n=<int>".
  /// Throws std::invalid_argument on malformed specs.
  static CatalogHoloFunction parse(std::string_view spec);

  HoloKind kind() const noexcept { return kind_; }
  double a() const noexcept { return a_; }
  int n() const noexcept { return n_; }
  std::string spec() const;

  /// psi_f(y): -a y, -n ln(1+y), or their sum.
  double log_max_modulus(double y) const;
  SampledFunction log_max_modulus(const Grid& grid) const;

  /// Whether |f(x+iy)| -> 0 as |x| -> inf for fixed y. False for e^{iaz}.
  bool vanishes_in_x() const noexcept { return kind_ != HoloKind::ExpLinear; }

 private:
  CatalogHoloFunction(HoloKind kind, double a, int n);
  HoloKind kind_;
  double a_;
  int n_;
};

/// ExpLinear(1), ExpLinear(2), CayleyPower(1), CayleyPower(3), Product(1,1).
std::vector<CatalogHoloFunction> holo_catalog();

struct NormConfig {
  ClassifyConfig classify;      // windows for the -inf trend test of the gap
  double overflow_log = 690.0;  // gap below -overflow_log reports an infinite norm
};

struct NormVerdict {
  bool finite = true;
  std::optional<double> norm;  // empty when the norm is infinite
  double inf_gap = 0.0;        // discrete inf of phi_v - psi_f
  double argmin = 0.0;
  bool window_caveat = false;  // argmin on a window edge: the true inf may lie outside
  std::string reason;
};

/// ||f||_v = exp(-inf_y (phi_v(y) - psi_f(y))).
NormVerdict norm_in_Hv(const CatalogHoloFunction& f, const RadialWeight& v, const NormConfig& config = {});

struct NontrivialityReport {
  PhiClass phi_class = PhiClass::NotPhi;
  bool phi_member = false;
  double limit_at_zero = 0.0;
  bool hv_nontrivial = false;
  bool hv0_nontrivial = false;
};

NontrivialityReport nontriviality(const RadialWeight& v, const ClassifyConfig& config = {});

enum class Space { Hv, Hv0 };

struct MembershipConfig {
  NormConfig norm;
  CertificateConfig certificate;
  Eigen::Index classify_knots = 8192;  // log grid on which psi_f is classified
};

struct MembershipVerdict {
  Space space = Space::Hv0;
  bool member = false;
  NormVerdict norm;
  DivergenceCertificate at_zero;
  DivergenceCertificate at_infinity;
  PhiClass psi_class = PhiClass::Phi3;
  bool vanishes_in_x = false;
  // Member and vanishing along horizontal lines, the full decay condition.
  bool strict_member = false;
  // A strict member whose psi_f has bounded residual: contradicts the class constraint.
  bool class_conflict = false;
  // A boundary-only member (no decay in x) with bounded-residual psi_f.
  bool boundary_only_flag = false;
};

/// Hv0 membership from the two boundary limits of v(iy) Mf(y) and a finite norm.
MembershipVerdict membership_Hv0(const CatalogHoloFunction& f, const RadialWeight& v,
                                 const MembershipConfig& config = {});

struct NormComparison {
  std::string function;
  NormVerdict under_v;
  NormVerdict under_w;
  double relative_difference = 0.0;
  bool agree = false;
};

struct Theorem61Report {
  std::vector<NormComparison> rows;
  bool all_agree = false;
};

/// Norms under v and its associated weight agree within `rel_tol`.
Theorem61Report theorem61_check(const RadialWeight& v, const std::vector<CatalogHoloFunction>& catalog,
                                const NormConfig& config = {}, double rel_tol = 1e-6);

struct MembershipComparison {
  std::string function;
  MembershipVerdict under_v;
  MembershipVerdict under_w;
  NormComparison norms;
  bool agree = false;
};

struct Theorem62Report {
  CheckStatus status = CheckStatus::Fail;
  NontrivialityReport hypothesis;
  std::vector<MembershipComparison> rows;
};

Theorem62Report theorem62_check(const RadialWeight& v, const std::vector<CatalogHoloFunction>& catalog,
                                const MembershipConfig& config = {}, double rel_tol = 1e-6);

}  // namespace logconvex
