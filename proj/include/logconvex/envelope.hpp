#pragma once

// Greatest convex minorant (second Young-Fenchel conjugate) of sampled data,
// supporting lines, and the discrete Legendre-Fenchel transform.

#include "logconvex/funcspace.hpp"

#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace logconvex {

/// Rounding allowance used by the discrete convexity tests: a small multiple of
/// machine epsilon, scaled by the magnitudes involved in each comparison.
inline constexpr double kRoundingUlps = 16.0 * std::numeric_limits<double>::epsilon();

/// An affine minorant x -> slope * x + intercept.
struct SupportLine {
  double slope = 0.0;
  double intercept = 0.0;

  double operator()(double x) const noexcept { return slope * x + intercept; }
};

/// Sampled data whose consecutive chord slopes are non-decreasing (up to
/// rounding). Keeps the knot indices of the lower-hull vertices.
class ConvexSampledFunction {
 public:
  /// Throws std::invalid_argument if f is not discretely convex.
  explicit ConvexSampledFunction(SampledFunction f);

  const SampledFunction& function() const noexcept { return f_; }
  const Grid& grid() const noexcept { return f_.grid(); }
  const Eigen::ArrayXd& values() const noexcept { return f_.values(); }
  Eigen::Index size() const noexcept { return f_.size(); }

  /// Hull vertices, increasing; always contains the first and last knot.
  const std::vector<Eigen::Index>& vertices() const noexcept { return vertices_; }

 private:
  struct Trusted {};
  ConvexSampledFunction(SampledFunction f, std::vector<Eigen::Index> vertices, Trusted);

  friend ConvexSampledFunction convex_envelope(const SampledFunction& f);
  friend ConvexSampledFunction biconjugate_via_legendre(const SampledFunction& f);
  friend ConvexSampledFunction restrict_to(const ConvexSampledFunction& g, const Grid& subgrid);

  SampledFunction f_;
  std::vector<Eigen::Index> vertices_;
};

/// Lower convex hull of the knot set (monotone chain), evaluated on f's grid.
/// Values equal f at hull vertices and never exceed f.
ConvexSampledFunction convex_envelope(const SampledFunction& f);

/// Discrete conjugate h*(a) = max_i (a * t_i - h_i) for each slope a. Knots must be
/// strictly increasing; slopes may be given in any order. Linear time for sorted slopes.
std::vector<double> conjugate(std::span<const double> knots, std::span<const double> values,
                              std::span<const double> slopes);

/// (slope, f*(slope)) pairs.
std::vector<std::pair<double, double>> legendre_transform(const SampledFunction& f,
                                                          std::span<const double> slopes);

/// f** on f's grid: conjugate at the breakpoints of f*, then conjugate back.
ConvexSampledFunction biconjugate_via_legendre(const SampledFunction& f);

/// A line through g at x whose slope lies between the adjacent hull slopes.
/// Throws std::out_of_range outside the grid.
SupportLine support_line_at(const ConvexSampledFunction& g, double x);

/// Consecutive chord slopes non-decreasing, up to a rounding allowance of
/// `ulps` relative to the magnitudes of the three values at each knot.
bool is_discretely_convex(const SampledFunction& f, double ulps = kRoundingUlps);

ConvexSampledFunction restrict_to(const ConvexSampledFunction& g, const Grid& subgrid);

}  // namespace logconvex
