#include "logconvex/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace logconvex {
namespace {

// Monotone chain over knots already sorted by abscissa. A middle point is
// dropped when it is not below the chord of its neighbours by more than the
// rounding allowance, so collinear runs keep only their end points.
std::vector<Eigen::Index> lower_hull_vertices(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y) {
  std::vector<Eigen::Index> hull;
  hull.reserve(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    while (hull.size() >= 2) {
      const Eigen::Index o = hull[hull.size() - 2];
      const Eigen::Index a = hull.back();
      const double dx1 = x[a] - x[o], dy1 = y[a] - y[o];
      const double dx2 = x[i] - x[o], dy2 = y[i] - y[o];
      const double cross = dx1 * dy2 - dy1 * dx2;
      const double slack =
          kRoundingUlps * (dx1 * (std::abs(y[i]) + std::abs(y[o])) + dx2 * (std::abs(y[a]) + std::abs(y[o])));
      if (cross > slack) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }
  return hull;
}

// Upper envelope of the lines a -> t_i * a - h_i (slopes t_i strictly
// increasing). Returns the surviving line indices and the breakpoints between
// consecutive survivors.
struct LineEnvelope {
  std::vector<Eigen::Index> lines;
  std::vector<double> breaks;
};

LineEnvelope upper_line_envelope(std::span<const double> t, std::span<const double> h) {
  auto meet = [&](std::size_t i, std::size_t j) { return (h[j] - h[i]) / (t[j] - t[i]); };
  std::vector<std::size_t> s;
  s.reserve(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) {
    while (s.size() >= 2 && meet(s[s.size() - 2], j) <= meet(s[s.size() - 2], s.back())) s.pop_back();
    s.push_back(j);
  }
  LineEnvelope env;
  env.lines.assign(s.begin(), s.end());
  for (std::size_t k = 0; k + 1 < s.size(); ++k) env.breaks.push_back(meet(s[k], s[k + 1]));
  return env;
}

void check_knots(std::span<const double> knots, std::span<const double> values) {
  if (knots.size() != values.size()) throw std::invalid_argument("knot and value counts differ");
  if (knots.empty()) throw std::invalid_argument("conjugate of an empty sample");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i] > knots[i - 1])) throw std::invalid_argument("conjugate knots must be strictly increasing");
  }
}

}  // namespace

ConvexSampledFunction::ConvexSampledFunction(SampledFunction f)
    : f_(std::move(f)), vertices_(lower_hull_vertices(f_.grid().points(), f_.values())) {
  if (!is_discretely_convex(f_)) throw std::invalid_argument("sampled function is not discretely convex");
}

ConvexSampledFunction::ConvexSampledFunction(SampledFunction f, std::vector<Eigen::Index> vertices, Trusted)
    : f_(std::move(f)), vertices_(std::move(vertices)) {}

ConvexSampledFunction convex_envelope(const SampledFunction& f) {
  const Eigen::ArrayXd& x = f.grid().points();
  const Eigen::ArrayXd& y = f.values();
  auto hull = lower_hull_vertices(x, y);

  Eigen::ArrayXd g = y;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const Eigen::Index lo = hull[k], hi = hull[k + 1];
    const double run = x[hi] - x[lo];
    const double rise = y[hi] - y[lo];
    for (Eigen::Index i = lo + 1; i < hi; ++i)
      g[i] = std::min(y[lo] + rise * ((x[i] - x[lo]) / run), y[i]);
  }
  return ConvexSampledFunction(SampledFunction(f.grid(), std::move(g)), std::move(hull),
                               ConvexSampledFunction::Trusted{});
}

std::vector<double> conjugate(std::span<const double> knots, std::span<const double> values,
                              std::span<const double> slopes) {
  check_knots(knots, values);
  const LineEnvelope env = upper_line_envelope(knots, values);

  std::vector<std::size_t> order(slopes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (!std::is_sorted(slopes.begin(), slopes.end())) {
    std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) { return slopes[l] < slopes[r]; });
  }

  auto line = [&](std::size_t k, double a) {
    const auto i = static_cast<std::size_t>(env.lines[k]);
    return knots[i] * a - values[i];
  };
  std::vector<double> out(slopes.size());
  std::size_t k = 0;
  for (auto q : order) {
    const double a = slopes[q];
    if (!std::isfinite(a)) throw std::invalid_argument("conjugate slope must be finite");
    while (k < env.breaks.size() && env.breaks[k] < a) ++k;
    double best = line(k, a);
    if (k > 0) best = std::max(best, line(k - 1, a));
    if (k + 1 < env.lines.size()) best = std::max(best, line(k + 1, a));
    out[q] = best;
  }
  return out;
}

std::vector<std::pair<double, double>> legendre_transform(const SampledFunction& f,
                                                          std::span<const double> slopes) {
  const auto values = conjugate(f.grid().view(), f.view(), slopes);
  std::vector<std::pair<double, double>> out;
  out.reserve(slopes.size());
  for (std::size_t i = 0; i < slopes.size(); ++i) out.emplace_back(slopes[i], values[i]);
  return out;
}

ConvexSampledFunction biconjugate_via_legendre(const SampledFunction& f) {
  const auto x = f.grid().view();
  const LineEnvelope env = upper_line_envelope(x, f.view());

  // Breakpoints of f* are the hull slopes of f; keep them strictly increasing.
  std::vector<double> breaks;
  for (double b : env.breaks) {
    if (breaks.empty() || b > breaks.back()) breaks.push_back(b);
  }
  const auto star = conjugate(x, f.view(), breaks);
  const auto back = conjugate(breaks, star, x);

  Eigen::ArrayXd values = Eigen::Map<const Eigen::ArrayXd>(back.data(), static_cast<Eigen::Index>(back.size()));
  return ConvexSampledFunction(SampledFunction(f.grid(), std::move(values)), env.lines,
                               ConvexSampledFunction::Trusted{});
}

SupportLine support_line_at(const ConvexSampledFunction& g, double x) {
  const Grid& grid = g.grid();
  if (!grid.contains(x)) throw std::out_of_range("support line requested outside the sampled window");
  const auto& v = g.vertices();
  const Eigen::ArrayXd& y = g.values();
  auto seg_slope = [&](std::size_t k) { return (y[v[k + 1]] - y[v[k]]) / (grid[v[k + 1]] - grid[v[k]]); };

  // First vertex strictly right of x.
  const auto it = std::upper_bound(v.begin(), v.end(), x, [&](double lhs, Eigen::Index idx) { return lhs < grid[idx]; });
  const auto right = static_cast<std::size_t>(it - v.begin());
  const std::size_t at = right - 1;  // vertex at or left of x

  if (grid[v[at]] == x) {
    double slope;
    if (at == 0) slope = seg_slope(0);
    else if (at + 1 == v.size()) slope = seg_slope(at - 1);
    else slope = 0.5 * (seg_slope(at - 1) + seg_slope(at));
    return {slope, y[v[at]] - slope * x};
  }
  const double slope = seg_slope(at);
  return {slope, y[v[at]] - slope * grid[v[at]]};
}

bool is_discretely_convex(const SampledFunction& f, double ulps) {
  const Eigen::ArrayXd& x = f.grid().points();
  const Eigen::ArrayXd& y = f.values();
  for (Eigen::Index i = 1; i + 1 < f.size(); ++i) {
    const double lhs = (y[i + 1] - y[i]) * (x[i] - x[i - 1]);
    const double rhs = (y[i] - y[i - 1]) * (x[i + 1] - x[i]);
    const double slack =
        ulps * (std::abs(y[i + 1]) + 2.0 * std::abs(y[i]) + std::abs(y[i - 1])) * (x[i + 1] - x[i - 1]);
    if (lhs - rhs < -slack) return false;
  }
  return true;
}

ConvexSampledFunction restrict_to(const ConvexSampledFunction& g, const Grid& subgrid) {
  SampledFunction sub = restrict_to(g.function(), subgrid);
  auto hull = lower_hull_vertices(sub.grid().points(), sub.values());
  return ConvexSampledFunction(std::move(sub), std::move(hull), ConvexSampledFunction::Trusted{});
}

}  // namespace logconvex
