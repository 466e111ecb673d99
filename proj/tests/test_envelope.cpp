#include "logconvex/envelope.hpp"
#include "logconvex/instances.hpp"

#include "frozen.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace logconvex;

namespace {

std::vector<double> to_vec(const Eigen::ArrayXd& a) { return {a.data(), a.data() + a.size()}; }

}  // namespace

TEST_CASE("envelope matches the cubic-time oracle on random data") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> knots(2, 60);
  for (int t = 0; t < 150; ++t) {
    const Grid g = random_grid(rng, knots(rng));
    const SampledFunction f = random_piecewise(rng, g);
    const ConvexSampledFunction env = convex_envelope(f);
    const auto expect = oracle::envelope(to_vec(g.points()), to_vec(f.values()));
    for (Eigen::Index i = 0; i < f.size(); ++i) CHECK(env.values()[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  }
}

TEST_CASE("hull vertices agree with gift wrapping") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const Grid g = random_grid(rng, 40);
    const SampledFunction f = random_piecewise(rng, g);
    const auto hull = oracle::jarvis_lower_hull(to_vec(g.points()), to_vec(f.values()));
    const ConvexSampledFunction env = convex_envelope(f);
    const auto& v = env.vertices();
    REQUIRE(v.size() == hull.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(static_cast<std::size_t>(v[i]) == hull[i]);
  }
}

TEST_CASE("envelope is an idempotent convex minorant touching at vertices") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const Grid g = random_grid(rng, 150);
    const SampledFunction f = random_piecewise(rng, g, 1e3);
    const ConvexSampledFunction env = convex_envelope(f);
    CHECK((env.values() <= f.values()).all());
    CHECK(is_discretely_convex(env.function()));
    for (Eigen::Index i : env.vertices()) CHECK(env.values()[i] == f.values()[i]);
    CHECK((convex_envelope(env.function()).values() == env.values()).all());
  }
}

TEST_CASE("convex and affine input is its own envelope") {
  std::mt19937_64 rng(10);
  const Grid g = random_grid(rng, 80);
  const SampledFunction c = random_convex(rng, g);
  CHECK((convex_envelope(c).values() == c.values()).all());
  const SampledFunction line(g, 3.0 * g.points() - 2.0);
  CHECK((convex_envelope(line).values() == line.values()).all());
  const SampledFunction two(Grid{1.0, 2.0}, Eigen::ArrayXd::LinSpaced(2, 5.0, -1.0));
  CHECK(convex_envelope(two).vertices().size() == 2);
}

TEST_CASE("envelope of a concave bump is the chord") {
  const Grid g{1.0, 2.0, 3.0};
  Eigen::ArrayXd v(3);
  v << 0.0, 5.0, 2.0;
  const ConvexSampledFunction env = convex_envelope(SampledFunction(g, v));
  CHECK(env.values()[1] == doctest::Approx(1.0));
  CHECK(env.vertices() == std::vector<Eigen::Index>{0, 2});
}

TEST_CASE("conjugate matches direct enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> slope(-20.0, 20.0);
  for (int t = 0; t < 50; ++t) {
    const Grid g = random_grid(rng, 50);
    const SampledFunction f = random_piecewise(rng, g);
    std::vector<double> slopes(37);
    for (double& s : slopes) s = slope(rng);
    const auto fast = conjugate(g.view(), f.view(), slopes);
    const auto slow = oracle::conjugate(to_vec(g.points()), to_vec(f.values()), slopes);
    for (std::size_t i = 0; i < slopes.size(); ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-13));
  }
  const std::vector<double> t{1.0, 2.0}, h{0.0};
  CHECK_THROWS_AS(conjugate(t, h, t), std::invalid_argument);
  const std::vector<double> bad{2.0, 1.0}, h2{0.0, 0.0};
  CHECK_THROWS_AS(conjugate(bad, h2, t), std::invalid_argument);
}

TEST_CASE("legendre biconjugate equals the monotone chain") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const Grid g = random_grid(rng, 120);
    const SampledFunction f = random_piecewise(rng, g);
    const ConvexSampledFunction a = convex_envelope(f), b = biconjugate_via_legendre(f);
    for (Eigen::Index i = 0; i < f.size(); ++i) CHECK(oracle::rel_diff(a.values()[i], b.values()[i]) <= 1e-9);
  }
  const SampledFunction f(Grid{1.0, 2.0, 3.0}, Eigen::ArrayXd::LinSpaced(3, 1.0, 3.0));
  const auto lt = legendre_transform(f, std::vector<double>{0.0, 1.0});
  CHECK(lt[0].second == doctest::Approx(-1.0));
  CHECK(lt[1].second == doctest::Approx(0.0));
}

TEST_CASE("support lines stay below and touch") {
  std::mt19937_64 rng(13);
  const Grid g = random_grid(rng, 60);
  const ConvexSampledFunction env = convex_envelope(random_piecewise(rng, g));
  std::uniform_real_distribution<double> where(g.front(), g.back());
  for (int t = 0; t < 50; ++t) {
    const double x = where(rng);
    const SupportLine l = support_line_at(env, x);
    CHECK(l(x) == doctest::Approx(eval_piecewise_linear(env.function(), x)).epsilon(1e-10));
    for (Eigen::Index i = 0; i < g.size(); ++i) CHECK(l(g[i]) <= env.values()[i] + 1e-9);
  }
  CHECK_THROWS_AS(support_line_at(env, g.back() * 2), std::out_of_range);
}

TEST_CASE("discrete convexity test") {
  const Grid g{1.0, 2.0, 3.0, 4.0};
  Eigen::ArrayXd sq = g.points().square();
  CHECK(is_discretely_convex(SampledFunction(g, sq)));
  Eigen::ArrayXd bump(4);
  bump << 0.0, 1.0, 1.0, 0.0;
  CHECK_FALSE(is_discretely_convex(SampledFunction(g, bump)));
  CHECK_THROWS_AS(ConvexSampledFunction(SampledFunction(g, bump)), std::invalid_argument);
}

TEST_CASE("restricting a convex function keeps it convex") {
  const Grid g = make_log_grid(0.1, 10.0, 50);
  const ConvexSampledFunction env = convex_envelope(SampledFunction(g, g.points().square()));
  const Grid sub{g[0], g[10], g[49]};
  const ConvexSampledFunction r = restrict_to(env, sub);
  CHECK(r.size() == 3);
  CHECK(r.values()[1] == env.values()[10]);
}

TEST_CASE("frozen chord identity for the quadratic family") {
  // The chord of x^2 + x over a period exceeds the parabola by pi^2 at its midpoint.
  const double h = 2 * 3.14159265358979323846;
  const double a = 10.0, m = a + h / 2, b = a + h;
  auto q = [](double x) { return x * x + x; };
  CHECK(0.5 * (q(a) + q(b)) - q(m) == doctest::Approx(frozen::kPi2).epsilon(1e-12));
}
