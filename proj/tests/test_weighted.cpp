#include "logconvex/instances.hpp"
#include "logconvex/weighted.hpp"

#include "frozen.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace logconvex;

namespace {

AnalyticFunction cat(CatalogKind k) { return AnalyticFunction::catalog(k); }

RadialWeight profile(const AnalyticFunction& f, const Grid& g) { return weight_from_log_profile(sample(f, g)); }

RadialWeight profile(const Grid& g, Eigen::ArrayXd values) {
  return weight_from_log_profile(SampledFunction(g, std::move(values)));
}

const Grid& std_grid() {
  static const Grid g = make_log_grid(1e-3, 1e3, 4096);
  return g;
}

const Grid& hv0_grid() {
  static const Grid g = make_log_grid(1e-5, 1e5, 4096);
  return g;
}

}  // namespace

TEST_CASE("log-profiles from weight values") {
  // Grids stay where exp(-phi) is a normal double.
  const Grid g = make_log_grid(1e-2, 1e3, 4096);
  CHECK((log_profile_of_weight(g, Eigen::ArrayXd::Ones(g.size())).log_profile().values() == 0.0).all());
  const Eigen::ArrayXd inv = g.points().inverse();
  const RadialWeight r = log_profile_of_weight(g, (-inv).exp());
  CHECK((r.log_profile().values() - inv).abs().maxCoeff() <= 1e-12 * inv.maxCoeff());
  CHECK(r.provenance() == WeightProvenance::FromWeightCSV);

  const Grid gauss = make_log_grid(1e-3, 25.0, 4096);
  const RadialWeight s = log_profile_of_weight(gauss, (-gauss.points().square()).exp());
  CHECK((s.log_profile().values() - gauss.points().square()).abs().maxCoeff() <= 1e-12 * 625.0);
  CHECK(classify(s.log_profile()).phi_class == PhiClass::Phi1);

  std::mt19937_64 rng(61);
  const Grid rg = random_grid(rng, 100);
  const Eigen::ArrayXd w = (random_piecewise(rng, rg, 20.0).values()).exp();
  const Eigen::ArrayXd back = log_profile_of_weight(rg, w).weights();
  CHECK(((back - w).abs() / w).maxCoeff() <= 1e-12);

  Eigen::ArrayXd bad = Eigen::ArrayXd::Ones(g.size());
  bad[7] = 0.0;
  CHECK_THROWS_AS(log_profile_of_weight(g, bad), std::invalid_argument);
  bad[7] = -1.0;
  CHECK_THROWS_AS(log_profile_of_weight(g, bad), std::invalid_argument);
  CHECK_THROWS_AS(log_profile_of_weight(g, Eigen::ArrayXd::Ones(3)), std::invalid_argument);
}

TEST_CASE("associated weight is an idempotent log-concave majorant") {
  std::mt19937_64 rng(62);
  for (int t = 0; t < 50; ++t) {
    const RadialWeight v = profile(random_piecewise(rng, random_grid(rng, 120), 5.0).grid(),
                                   Eigen::ArrayXd::Zero(120));
    const RadialWeight u = weight_from_log_profile(random_piecewise(rng, random_grid(rng, 120), 5.0));
    for (const RadialWeight* x : {&v, &u}) {
      const RadialWeight w = associated_weight(*x);
      CHECK(w.provenance() == WeightProvenance::Associated);
      CHECK((w.weights() >= x->weights()).all());
      CHECK(is_discretely_convex(w.log_profile()));
      CHECK((associated_weight(w).log_profile().values() == w.log_profile().values()).all());
    }
  }
  const RadialWeight sq = profile(cat(CatalogKind::Square), std_grid());
  CHECK((associated_weight(sq).log_profile().values() == sq.log_profile().values()).all());
}

TEST_CASE("associated weight of the truncated profile is nearly constant") {
  const Grid g = make_log_grid(1e-9, 1e9, 8192);
  const Eigen::ArrayXd w = associated_weight(profile(cat(CatalogKind::Ex31Phi), g)).weights();
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (g[i] >= 1e-3 && g[i] <= 1e3) CHECK(std::abs(w[i] * std::exp(1.0) - 1.0) <= 1e-5);
}

TEST_CASE("associated profile of the oscillating weight touches its minorant") {
  const Grid g = counterexample_grid(CounterexampleFamily::Prop41, 1e-5, 1e2);
  const RadialWeight w = associated_weight(profile(cat(CatalogKind::Prop41Phi), g));
  for (long k = 1; k <= 10; ++k) {
    const double x = prop41_touch(k);
    const auto i = g.find(x);
    REQUIRE(i.has_value());
    const double expect = 1 / (x * x) + 1 / x;
    CHECK(std::abs(w.log_profile().value(*i) - expect) <= 1e-6 * expect);
  }
}

TEST_CASE("catalog holomorphic functions") {
  const auto all = holo_catalog();
  CHECK(all.size() == 5);
  for (const auto& f : all) CHECK(CatalogHoloFunction::parse(f.spec()).spec() == f.spec());
  const CatalogHoloFunction p = CatalogHoloFunction::parse("product:a=1.5,n=2");
  CHECK(p.log_max_modulus(2.0) == doctest::Approx(-3.0 - 2.0 * std::log(3.0)));
  CHECK(CatalogHoloFunction::exp_linear(2.0).log_max_modulus(0.5) == -1.0);
  CHECK_FALSE(CatalogHoloFunction::exp_linear(1.0).vanishes_in_x());
  CHECK(CatalogHoloFunction::cayley_power(1).vanishes_in_x());
  for (const char* bad : {"exp_iaz", "exp_iaz:a=-1", "cayley_pow:n=0", "foo:a=1", "exp_iaz:a=1,n=2",
                          "cayley_pow:n=1.5", "product:a=1", "exp_iaz:a=1,a=2", "exp_iaz:a"})
    CHECK_THROWS_AS(CatalogHoloFunction::parse(bad), std::invalid_argument);
}

TEST_CASE("norms against frozen closed-form minima") {
  for (const auto& ref : frozen::kReciprocalProfileGaps) {
    const CatalogHoloFunction f = CatalogHoloFunction::parse(ref.spec);
    const Grid g = grid_union(std_grid().view(), std::vector<double>{ref.argmin});
    const NormVerdict n = norm_in_Hv(f, profile(cat(CatalogKind::Reciprocal), g));
    REQUIRE(n.finite);
    CHECK(n.inf_gap == doctest::Approx(ref.value).epsilon(1e-14));
    CHECK(*n.norm == doctest::Approx(std::exp(-ref.value)).epsilon(1e-14));
    CHECK(n.argmin == ref.argmin);
    CHECK_FALSE(n.window_caveat);
    // Without the exact minimiser among the knots the error is second order.
    const NormVerdict coarse = norm_in_Hv(f, profile(cat(CatalogKind::Reciprocal), std_grid()));
    CHECK(std::abs(*coarse.norm / *n.norm - 1.0) <= 1e-5);
  }
}

TEST_CASE("norm examples") {
  const Grid& g = std_grid();
  const NormVerdict one = norm_in_Hv(CatalogHoloFunction::exp_linear(1.0), profile(g, Eigen::ArrayXd::Zero(g.size())));
  CHECK(one.finite);
  CHECK(*one.norm == doctest::Approx(std::exp(-1e-3)));
  CHECK(one.window_caveat);

  const RadialWeight sq = profile(cat(CatalogKind::Square), g);
  CHECK(*norm_in_Hv(CatalogHoloFunction::exp_linear(1.0), sq).norm == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(*norm_in_Hv(CatalogHoloFunction::cayley_power(1), sq).norm == doctest::Approx(1.0).epsilon(2e-3));

  const NormVerdict blow = norm_in_Hv(CatalogHoloFunction::cayley_power(1), profile(g, -g.points()));
  CHECK_FALSE(blow.finite);
  CHECK_FALSE(blow.norm.has_value());
  CHECK_FALSE(blow.reason.empty());
}

TEST_CASE("norm agrees with a million-knot brute force") {
  const Grid fine = make_log_grid(1e-3, 1e3, 1000000);
  const AnalyticFunction phi = cat(CatalogKind::Prop42Phi);
  double brute = INFINITY;
  for (Eigen::Index i = 0; i < fine.size(); ++i) brute = std::min(brute, phi(fine[i]) + fine[i]);
  const Grid g = catalog_grid(phi, 1e-3, 1e3, 4096);
  const RadialWeight v = profile(phi, g);
  const NormVerdict nv = norm_in_Hv(CatalogHoloFunction::exp_linear(1.0), v);
  const NormVerdict nw = norm_in_Hv(CatalogHoloFunction::exp_linear(1.0), associated_weight(v));
  CHECK(std::abs(*nv.norm - std::exp(-brute)) <= 1e-6 * std::exp(-brute));
  CHECK(std::abs(*nw.norm - *nv.norm) <= 1e-6 * *nv.norm);
}

TEST_CASE("norms are monotone in the weight") {
  std::mt19937_64 rng(63);
  for (int t = 0; t < 50; ++t) {
    const SampledFunction base = random_piecewise(rng, random_grid(rng, 80), 3.0);
    const Eigen::ArrayXd drop = (random_piecewise(rng, base.grid(), 1.0).values() + 1.0).max(0.0);
    const RadialWeight v = weight_from_log_profile(base);
    const RadialWeight w = profile(base.grid(), base.values() - drop);  // w >= v
    for (const auto& f : holo_catalog()) {
      // The discrete identity is exact; finiteness verdicts on random data are trend estimates.
      const NormVerdict a = norm_in_Hv(f, v), b = norm_in_Hv(f, w);
      CHECK(b.inf_gap <= a.inf_gap);
      if (a.finite && b.finite) CHECK(*a.norm <= *b.norm);
    }
  }
}

TEST_CASE("nontriviality") {
  const Grid& g = std_grid();
  const NontrivialityReport sq = nontriviality(profile(cat(CatalogKind::Square), g));
  CHECK(sq.hv_nontrivial);
  CHECK_FALSE(sq.hv0_nontrivial);
  const NontrivialityReport both =
      nontriviality(profile(cat(CatalogKind::Reciprocal) + cat(CatalogKind::Square), g));
  CHECK(both.hv_nontrivial);
  CHECK(both.hv0_nontrivial);
  const NontrivialityReport neg = nontriviality(profile(g, -g.points().square()));
  CHECK_FALSE(neg.hv_nontrivial);
  CHECK_FALSE(neg.hv0_nontrivial);
}

TEST_CASE("membership in the little space") {
  const Grid& g = hv0_grid();
  const MembershipVerdict m = membership_Hv0(CatalogHoloFunction::exp_linear(1.0),
                                             profile(cat(CatalogKind::Reciprocal) + cat(CatalogKind::Square), g));
  CHECK(m.member);
  CHECK(m.at_zero.diverges);
  CHECK(m.at_infinity.diverges);
  CHECK_FALSE(m.strict_member);
  CHECK(m.boundary_only_flag);
  CHECK(m.psi_class == PhiClass::Phi3);

  CHECK_FALSE(membership_Hv0(CatalogHoloFunction::exp_linear(1.0), profile(cat(CatalogKind::Square), g)).member);
  const MembershipVerdict c = membership_Hv0(CatalogHoloFunction::cayley_power(1), profile(g, Eigen::ArrayXd::Zero(g.size())));
  CHECK_FALSE(c.member);
  CHECK_FALSE(c.at_zero.diverges);
}

TEST_CASE("strict members never have bounded-residual log-modulus") {
  for (const auto& phi : catalog_functions()) {
    const Grid g = catalog_grid(phi, 1e-5, phi.oscillatory() ? 1e4 : 1e5, 4096);
    const RadialWeight v = profile(phi, g);
    for (const auto& f : holo_catalog()) {
      const MembershipVerdict m = membership_Hv0(f, v);
      CHECK_FALSE_MESSAGE(m.class_conflict, std::string(phi.name() + " / " + f.spec()));
      if (m.strict_member) CHECK((m.psi_class == PhiClass::Phi1 || m.psi_class == PhiClass::Phi2));
    }
  }
}

TEST_CASE("norm equality under the associated weight") {
  for (const auto& phi : catalog_functions()) {
    const Theorem61Report r = theorem61_check(profile(phi, catalog_grid(phi, 1e-3, 1e3, 4096)), holo_catalog());
    CHECK_MESSAGE(r.all_agree, phi.name());
  }
  const Theorem61Report convex = theorem61_check(profile(cat(CatalogKind::Square), std_grid()), holo_catalog());
  for (const auto& row : convex.rows) CHECK(row.relative_difference == 0.0);
}

TEST_CASE("membership agreement under the associated weight") {
  const Theorem62Report a =
      theorem62_check(profile(cat(CatalogKind::Reciprocal) + cat(CatalogKind::Square), hv0_grid()), holo_catalog());
  CHECK(a.status == CheckStatus::Pass);

  const Grid g = counterexample_grid(CounterexampleFamily::Prop41, 1e-5, 1e2);
  const Theorem62Report p = theorem62_check(profile(cat(CatalogKind::Prop41Phi), g), holo_catalog());
  CHECK(p.status == CheckStatus::Pass);
  for (const auto& row : p.rows)
    if (row.function == "exp_iaz:a=1") {
      CHECK(row.under_v.at_zero.diverges);
      CHECK(row.under_w.at_zero.diverges);
    }

  const Theorem62Report sq = theorem62_check(profile(cat(CatalogKind::Square), std_grid()), holo_catalog());
  CHECK(sq.status == CheckStatus::HypothesisViolated);
}
