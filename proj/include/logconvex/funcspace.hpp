#pragma once

// Real functions on the positive half-line: sampled grids, the analytic
// catalog used throughout the library, and conversions between them.

#include <Eigen/Core>

#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace logconvex {

/// Strictly increasing, finite, positive abscissae; at least two knots.
class Grid {
 public:
  explicit Grid(Eigen::ArrayXd points);
  explicit Grid(const std::vector<double>& points);
  Grid(std::initializer_list<double> points);

  const Eigen::ArrayXd& points() const noexcept { return points_; }
  Eigen::Index size() const noexcept { return points_.size(); }
  double operator[](Eigen::Index i) const { return points_[i]; }
  double front() const noexcept { return points_[0]; }
  double back() const noexcept { return points_[points_.size() - 1]; }

  bool contains(double x) const noexcept { return x >= front() && x <= back(); }

  /// Index of the knot equal to x, if any.
  std::optional<Eigen::Index> find(double x) const noexcept;

  /// Largest i with points[i] <= x, clamped to [0, size-2]. Requires contains(x).
  Eigen::Index bracket(double x) const;

  std::span<const double> view() const noexcept {
    return {points_.data(), static_cast<std::size_t>(points_.size())};
  }

  friend bool operator==(const Grid& a, const Grid& b) noexcept;

 private:
  Eigen::ArrayXd points_;
};

/// Finite values on a grid.
class SampledFunction {
 public:
  SampledFunction(Grid grid, Eigen::ArrayXd values);

  const Grid& grid() const noexcept { return grid_; }
  const Eigen::ArrayXd& values() const noexcept { return values_; }
  Eigen::Index size() const noexcept { return values_.size(); }
  double x(Eigen::Index i) const { return grid_[i]; }
  double value(Eigen::Index i) const { return values_[i]; }

  std::span<const double> view() const noexcept {
    return {values_.data(), static_cast<std::size_t>(values_.size())};
  }

 private:
  Grid grid_;
  Eigen::ArrayXd values_;
};

enum class CatalogKind {
  Square,       // x^2
  XMinusSqrtX,  // x - sqrt(x)
  Reciprocal,   // 1/x
  Ex31Phi,      // min{x,1} + 1
  Ex31Psi,      // x/(x+1)
  Prop41Phi,    // 1/x^2 + (1/x) sin(1/x) + 2/x
  Prop41Psi,    // 1/x^2 + (1/x) sin(1/x)
  Prop42Phi,    // x^2 + x sin x + 2x
  Prop42Psi,    // x^2 + x sin x
  Ex33Phi,      // x^2 + x
  Ex33Psi,      // 3x-1 | 5-3x | x^2+x-7 on (0,1] (1,2] (2,inf)
  Affine,       // a x + b
  Custom,
};

/// A closed-form function on (0, +inf). Catalog members carry their kind;
/// sums and user hooks are Custom and remember which catalog kinds they were
/// assembled from (needed to place critical knots on oscillatory terms).
class AnalyticFunction {
 public:
  static AnalyticFunction catalog(CatalogKind kind);
  static AnalyticFunction affine(double slope, double intercept);
  static AnalyticFunction custom(std::string tag, std::function<double(double)> fn);

  /// Parses a snake_case catalog tag, e.g. "square", "ex31_phi",
  /// "affine:a=3,b=-5". Throws std::invalid_argument on unknown names.
  static AnalyticFunction parse(std::string_view name);

  double operator()(double x) const;

  CatalogKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  double slope() const noexcept { return a_; }
  double intercept() const noexcept { return b_; }

  /// Catalog kinds this function is built from (itself, for catalog members).
  const std::vector<CatalogKind>& components() const noexcept { return components_; }
  bool oscillatory() const noexcept;

  friend AnalyticFunction operator+(const AnalyticFunction& lhs, const AnalyticFunction& rhs);

 private:
  AnalyticFunction() = default;

  CatalogKind kind_ = CatalogKind::Custom;
  std::string name_;
  double a_ = 0.0;
  double b_ = 0.0;
  std::shared_ptr<const std::function<double(double)>> fn_;
  std::vector<CatalogKind> components_;
};

std::string_view catalog_tag(CatalogKind kind);

/// The twelve catalog functions (Affine as x + 1), in declaration order.
std::vector<AnalyticFunction> catalog_functions();

/// n geometrically spaced knots from x_min to x_max, endpoints exact.
Grid make_log_grid(double x_min, double x_max, Eigen::Index n);

/// Merges fill knots with knots that must appear verbatim. Fill knots closer
/// than a relative 1e-10 to an already kept knot are dropped; exact knots win.
Grid grid_union(std::span<const double> fill, std::span<const double> exact);

// Critical abscissae of the two oscillatory families, k = 0, 1, 2, ...
// Reciprocal family: x_k = 1/(3pi/2 + 2k pi), x~_k = 1/(5pi/2 + 2k pi).
// Quadratic family:  x_k = 3pi/2 + 2k pi,     x~_k = 5pi/2 + 2k pi.
double prop41_touch(long k);
double prop41_mid(long k);
double prop42_touch(long k);
double prop42_mid(long k);

/// Touch points x_k and midpoint-type points x~_k of the oscillatory families
/// (for Prop41*/Prop42* components) and the kinks of the piecewise entries,
/// restricted to [lo, hi].
std::vector<double> critical_points(const AnalyticFunction& f, double lo, double hi);

/// Knots at `per_period` per oscillation period of the sine terms of f over [lo, hi].
std::vector<double> oscillation_fill(const AnalyticFunction& f, double lo, double hi,
                                     int per_period = 32);

/// Log fill of n knots, plus critical points and oscillation fill where f needs them.
Grid catalog_grid(const AnalyticFunction& f, double x_min, double x_max, Eigen::Index n);

/// Evaluates f at every knot; throws std::domain_error naming the abscissa on overflow.
SampledFunction sample(const AnalyticFunction& f, const Grid& grid);

/// Linear interpolation between bracketing knots; no extrapolation.
double eval_piecewise_linear(const SampledFunction& f, double x);

/// The values of f at the knots of `subgrid`, each of which must be a knot of f.
SampledFunction restrict_to(const SampledFunction& f, const Grid& subgrid);

}  // namespace logconvex
