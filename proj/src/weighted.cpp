#include "logconvex/weighted.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace logconvex {
namespace {

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  return v;
}

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  return v;
}

std::string shortest(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

bool gap_falls(const SampledFunction& gap, const std::vector<IndexWindow>& windows) {
  std::vector<double> neg;
  for (const auto& w : windows) {
    double m = gap.value(w.first);
    for (Eigen::Index i = w.first; i <= w.last; ++i) m = std::min(m, gap.value(i));
    neg.push_back(-m);
  }
  return trend_diverges(neg, std::numeric_limits<double>::infinity());
}

}  // namespace

std::string_view to_string(WeightProvenance p) {
  switch (p) {
    case WeightProvenance::FromWeightCSV: return "from_weight_csv";
    case WeightProvenance::FromLogProfile: return "from_log_profile";
    case WeightProvenance::Associated: return "associated";
  }
  return "from_log_profile";
}

RadialWeight::RadialWeight(SampledFunction log_profile, WeightProvenance provenance)
    : profile_(std::move(log_profile)), provenance_(provenance) {}

RadialWeight log_profile_of_weight(const Grid& grid, const Eigen::ArrayXd& weights) {
  if (weights.size() != grid.size()) throw std::invalid_argument("weight count differs from the grid");
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!(std::isfinite(weights[i]) && weights[i] > 0.0))
      throw std::invalid_argument("weight at y = " + shortest(grid[i]) + " is not finite and positive");
  }
  return RadialWeight(SampledFunction(grid, -weights.log()), WeightProvenance::FromWeightCSV);
}

RadialWeight weight_from_log_profile(SampledFunction profile) {
  return RadialWeight(std::move(profile), WeightProvenance::FromLogProfile);
}

RadialWeight associated_weight(const RadialWeight& v) {
  return RadialWeight(convex_envelope(v.log_profile()).function(), WeightProvenance::Associated);
}

// ---------------------------------------------------------------------------

CatalogHoloFunction::CatalogHoloFunction(HoloKind kind, double a, int n) : kind_(kind), a_(a), n_(n) {
  if (kind != HoloKind::CayleyPower && !(std::isfinite(a) && a > 0.0))
    throw std::invalid_argument("exponent parameter a must be positive");
  if (kind != HoloKind::ExpLinear && n < 1) throw std::invalid_argument("power n must be at least 1");
}

CatalogHoloFunction CatalogHoloFunction::exp_linear(double a) { return {HoloKind::ExpLinear, a, 0}; }
CatalogHoloFunction CatalogHoloFunction::cayley_power(int n) { return {HoloKind::CayleyPower, 0.0, n}; }
CatalogHoloFunction CatalogHoloFunction::product(double a, int n) { return {HoloKind::Product, a, n}; }

CatalogHoloFunction CatalogHoloFunction::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("function spec needs parameters: " + std::string(spec));
  const std::string_view head = spec.substr(0, colon);
  std::string_view rest = spec.substr(colon + 1);

  std::optional<double> a;
  std::optional<int> n;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("malformed parameter '" + std::string(item) + "'");
    const std::string_view key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "a" && !a) a = parse_double(value, "a");
    else if (key == "n" && !n) n = parse_int(value, "n");
    else throw std::invalid_argument("unexpected parameter '" + std::string(key) + "'");
  }

  if (head == "exp_iaz" && a && !n) return exp_linear(*a);
  if (head == "cayley_pow" && n && !a) return cayley_power(*n);
  if (head == "product" && a && n) return product(*a, *n);
  throw std::invalid_argument("unknown function spec: " + std::string(spec));
}

std::string CatalogHoloFunction::spec() const {
  switch (kind_) {
    case HoloKind::ExpLinear: return "exp_iaz:a=" + shortest(a_);
    case HoloKind::CayleyPower: return "cayley_pow:n=" + std::to_string(n_);
    case HoloKind::Product: return "product:a=" + shortest(a_) + ",n=" + std::to_string(n_);
  }
  return {};
}

double CatalogHoloFunction::log_max_modulus(double y) const {
  // |e^{ia(x+iy)}| = e^{-ay}; |x + i(1+y)| is smallest at x = 0.
  double v = 0.0;
  if (kind_ != HoloKind::CayleyPower) v -= a_ * y;
  if (kind_ != HoloKind::ExpLinear) v -= n_ * std::log1p(y);
  return v;
}

SampledFunction CatalogHoloFunction::log_max_modulus(const Grid& grid) const {
  Eigen::ArrayXd v(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) v[i] = log_max_modulus(grid[i]);
  return SampledFunction(grid, std::move(v));
}

std::vector<CatalogHoloFunction> holo_catalog() {
  return {CatalogHoloFunction::exp_linear(1.0), CatalogHoloFunction::exp_linear(2.0),
          CatalogHoloFunction::cayley_power(1), CatalogHoloFunction::cayley_power(3),
          CatalogHoloFunction::product(1.0, 1)};
}

// ---------------------------------------------------------------------------

NormVerdict norm_in_Hv(const CatalogHoloFunction& f, const RadialWeight& v, const NormConfig& config) {
  const SampledFunction& phi = v.log_profile();
  const SampledFunction psi = f.log_max_modulus(v.grid());
  const GapMinimum m = inf_gap(phi, psi);

  Eigen::ArrayXd d = phi.values() - psi.values();
  const SampledFunction gap(v.grid(), std::move(d));

  NormVerdict r;
  r.inf_gap = m.value;
  r.argmin = m.argmin;
  r.window_caveat = m.index == 0 || m.index + 1 == phi.size();
  const ClassifyConfig& c = config.classify;
  if (m.value < -config.overflow_log) {
    r.finite = false;
    r.reason = "gap below the overflow guard";
  } else if (gap_falls(gap, head_windows(v.grid(), c.tail_fraction, c.sub_windows))) {
    r.finite = false;
    r.reason = "gap falls without bound toward 0+";
  } else if (gap_falls(gap, tail_windows(v.grid(), c.tail_fraction, c.sub_windows))) {
    r.finite = false;
    r.reason = "gap falls without bound toward +inf";
  } else {
    r.norm = std::exp(-m.value);
  }
  return r;
}

NontrivialityReport nontriviality(const RadialWeight& v, const ClassifyConfig& config) {
  const AsymptoticProfile p = classify(v.log_profile(), config);
  NontrivialityReport r;
  r.phi_class = p.phi_class;
  r.phi_member = p.phi_member;
  r.limit_at_zero = p.limit_at_zero;
  r.hv_nontrivial = p.phi_member;
  r.hv0_nontrivial = p.phi_member && std::isinf(p.limit_at_zero) && p.limit_at_zero > 0.0;
  return r;
}

MembershipVerdict membership_Hv0(const CatalogHoloFunction& f, const RadialWeight& v,
                                 const MembershipConfig& config) {
  MembershipVerdict r;
  r.space = Space::Hv0;
  r.norm = norm_in_Hv(f, v, config.norm);
  const SampledFunction psi = f.log_max_modulus(v.grid());
  r.at_zero = divergence_certificate(v.log_profile(), psi, End::AtZero, config.certificate);
  r.at_infinity = divergence_certificate(v.log_profile(), psi, End::AtInfinity, config.certificate);
  r.member = r.norm.finite && r.at_zero.diverges && r.at_infinity.diverges;

  // psi_f is classified on its own log grid: v's grid may crowd near one end.
  const Grid g = make_log_grid(v.grid().front(), v.grid().back(), config.classify_knots);
  r.psi_class = classify(f.log_max_modulus(g), config.norm.classify).phi_class;
  r.vanishes_in_x = f.vanishes_in_x();
  r.strict_member = r.member && r.vanishes_in_x;
  const bool bounded_class = r.psi_class != PhiClass::Phi1 && r.psi_class != PhiClass::Phi2;
  r.class_conflict = r.strict_member && bounded_class;
  r.boundary_only_flag = r.member && !r.vanishes_in_x && bounded_class;
  return r;
}

namespace {

NormComparison compare_norms(const CatalogHoloFunction& f, const RadialWeight& v, const RadialWeight& w,
                             const NormConfig& config, double rel_tol) {
  NormComparison c;
  c.function = f.spec();
  c.under_v = norm_in_Hv(f, v, config);
  c.under_w = norm_in_Hv(f, w, config);
  if (c.under_v.finite && c.under_w.finite) {
    const double nv = *c.under_v.norm, nw = *c.under_w.norm;
    c.relative_difference = std::abs(nv - nw) / std::max({nv, nw, std::numeric_limits<double>::min()});
    c.agree = c.relative_difference <= rel_tol;
  } else {
    c.agree = c.under_v.finite == c.under_w.finite;
  }
  return c;
}

}  // namespace

Theorem61Report theorem61_check(const RadialWeight& v, const std::vector<CatalogHoloFunction>& catalog,
                                const NormConfig& config, double rel_tol) {
  const RadialWeight w = associated_weight(v);
  Theorem61Report r;
  r.all_agree = true;
  for (const auto& f : catalog) {
    r.rows.push_back(compare_norms(f, v, w, config, rel_tol));
    r.all_agree = r.all_agree && r.rows.back().agree;
  }
  return r;
}

Theorem62Report theorem62_check(const RadialWeight& v, const std::vector<CatalogHoloFunction>& catalog,
                                const MembershipConfig& config, double rel_tol) {
  const RadialWeight w = associated_weight(v);
  Theorem62Report r;
  r.hypothesis = nontriviality(v, config.norm.classify);
  bool all = true;
  for (const auto& f : catalog) {
    MembershipComparison c;
    c.function = f.spec();
    c.under_v = membership_Hv0(f, v, config);
    c.under_w = membership_Hv0(f, w, config);
    c.norms = compare_norms(f, v, w, config.norm, rel_tol);
    c.agree = c.under_v.member == c.under_w.member && c.norms.agree;
    all = all && c.agree;
    r.rows.push_back(std::move(c));
  }
  if (!r.hypothesis.hv0_nontrivial) r.status = CheckStatus::HypothesisViolated;
  else r.status = all ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

}  // namespace logconvex
