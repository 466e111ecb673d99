#include "logconvex/instances.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace logconvex {

Grid random_grid(std::mt19937_64& rng, Eigen::Index n, double x_lo, double x_hi) {
  if (n < 2) throw std::invalid_argument("random grid needs at least two knots");
  std::uniform_real_distribution<double> gap(0.1, 1.0);
  std::vector<double> steps(static_cast<std::size_t>(n - 1));
  for (auto& s : steps) s = gap(rng);
  double total = 0.0;
  for (double s : steps) total += s;
  std::vector<double> x(static_cast<std::size_t>(n));
  x.front() = x_lo;
  double acc = 0.0;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    acc += steps[i - 1];
    x[i] = x_lo + (x_hi - x_lo) * (acc / total);
  }
  x.back() = x_hi;
  return Grid(x);
}

SampledFunction random_piecewise(std::mt19937_64& rng, const Grid& grid, double amplitude) {
  std::uniform_real_distribution<double> value(-amplitude, amplitude);
  Eigen::ArrayXd v(grid.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = value(rng);
  return SampledFunction(grid, std::move(v));
}

SampledFunction random_convex(std::mt19937_64& rng, const Grid& grid, double slope_bound) {
  std::uniform_real_distribution<double> slope(-slope_bound, slope_bound);
  std::uniform_real_distribution<double> start(-5.0, 5.0);
  std::vector<double> s(static_cast<std::size_t>(grid.size() - 1));
  for (auto& v : s) v = slope(rng);
  std::sort(s.begin(), s.end());
  Eigen::ArrayXd v(grid.size());
  v[0] = start(rng);
  for (Eigen::Index i = 1; i < v.size(); ++i) v[i] = v[i - 1] + s[static_cast<std::size_t>(i - 1)] * (grid[i] - grid[i - 1]);
  return SampledFunction(grid, std::move(v));
}

}  // namespace logconvex
