#include "logconvex/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace logconvex {
namespace {

constexpr double kPi = std::numbers::pi;

std::string describe(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void validate_points(const Eigen::ArrayXd& p) {
  if (p.size() < 2) throw std::invalid_argument("grid needs at least two knots");
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i]) || p[i] <= 0.0)
      throw std::invalid_argument("grid knot " + describe(p[i]) + " is not finite and positive");
    if (i > 0 && !(p[i] > p[i - 1]))
      throw std::invalid_argument("grid knots must be strictly increasing near " + describe(p[i]));
  }
}

double ex33_psi(double x) {
  if (x <= 1.0) return 3.0 * x - 1.0;
  if (x <= 2.0) return 5.0 - 3.0 * x;
  return x * x + x - 7.0;
}

double prop41_psi(double x) {
  const double u = 1.0 / x;
  return u * u + u * std::sin(u);
}

double prop42_psi(double x) { return x * x + x * std::sin(x); }

double evaluate(CatalogKind kind, double x, double a, double b) {
  switch (kind) {
    case CatalogKind::Square: return x * x;
    case CatalogKind::XMinusSqrtX: return x - std::sqrt(x);
    case CatalogKind::Reciprocal: return 1.0 / x;
    case CatalogKind::Ex31Phi: return std::min(x, 1.0) + 1.0;
    case CatalogKind::Ex31Psi: return x / (x + 1.0);
    case CatalogKind::Prop41Phi: return prop41_psi(x) + 2.0 / x;
    case CatalogKind::Prop41Psi: return prop41_psi(x);
    case CatalogKind::Prop42Phi: return prop42_psi(x) + 2.0 * x;
    case CatalogKind::Prop42Psi: return prop42_psi(x);
    case CatalogKind::Ex33Phi: return x * x + x;
    case CatalogKind::Ex33Psi: return ex33_psi(x);
    case CatalogKind::Affine: return a * x + b;
    case CatalogKind::Custom: break;
  }
  throw std::logic_error("custom function without body");
}

constexpr CatalogKind kCatalogOrder[] = {
    CatalogKind::Square,    CatalogKind::XMinusSqrtX, CatalogKind::Reciprocal,
    CatalogKind::Ex31Phi,   CatalogKind::Ex31Psi,     CatalogKind::Prop41Phi,
    CatalogKind::Prop41Psi, CatalogKind::Prop42Phi,   CatalogKind::Prop42Psi,
    CatalogKind::Ex33Phi,   CatalogKind::Ex33Psi,     CatalogKind::Affine,
};

bool is_prop41(CatalogKind k) { return k == CatalogKind::Prop41Phi || k == CatalogKind::Prop41Psi; }
bool is_prop42(CatalogKind k) { return k == CatalogKind::Prop42Phi || k == CatalogKind::Prop42Psi; }

template <typename Pred>
bool any_component(const AnalyticFunction& f, Pred pred) {
  return std::any_of(f.components().begin(), f.components().end(), pred);
}

}  // namespace

// ---------------------------------------------------------------------------
// Grid

Grid::Grid(Eigen::ArrayXd points) : points_(std::move(points)) { validate_points(points_); }

Grid::Grid(const std::vector<double>& points)
    : Grid(Eigen::Map<const Eigen::ArrayXd>(points.data(), static_cast<Eigen::Index>(points.size()))) {}

Grid::Grid(std::initializer_list<double> points) : Grid(std::vector<double>(points)) {}

std::optional<Eigen::Index> Grid::find(double x) const noexcept {
  const auto v = view();
  const auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) return std::nullopt;
  return static_cast<Eigen::Index>(it - v.begin());
}

Eigen::Index Grid::bracket(double x) const {
  const auto v = view();
  const auto it = std::upper_bound(v.begin(), v.end(), x);
  auto i = static_cast<Eigen::Index>(it - v.begin()) - 1;
  return std::clamp<Eigen::Index>(i, 0, size() - 2);
}

bool operator==(const Grid& a, const Grid& b) noexcept {
  return a.size() == b.size() && (a.points_ == b.points_).all();
}

// ---------------------------------------------------------------------------
// SampledFunction

SampledFunction::SampledFunction(Grid grid, Eigen::ArrayXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("value count does not match grid size");
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw std::invalid_argument("non-finite value at x = " + describe(grid_[i]));
  }
}

// ---------------------------------------------------------------------------
// AnalyticFunction

AnalyticFunction AnalyticFunction::catalog(CatalogKind kind) {
  if (kind == CatalogKind::Custom) throw std::invalid_argument("custom is not a catalog entry");
  if (kind == CatalogKind::Affine) return affine(1.0, 1.0);
  AnalyticFunction f;
  f.kind_ = kind;
  f.name_ = std::string(catalog_tag(kind));
  f.components_ = {kind};
  return f;
}

AnalyticFunction AnalyticFunction::affine(double slope, double intercept) {
  if (!std::isfinite(slope) || !std::isfinite(intercept))
    throw std::invalid_argument("affine coefficients must be finite");
  AnalyticFunction f;
  f.kind_ = CatalogKind::Affine;
  f.a_ = slope;
  f.b_ = intercept;
  std::ostringstream os;
  os.precision(17);
  os << "affine:a=" << slope << ",b=" << intercept;
  f.name_ = os.str();
  f.components_ = {CatalogKind::Affine};
  return f;
}

AnalyticFunction AnalyticFunction::custom(std::string tag, std::function<double(double)> fn) {
  if (!fn) throw std::invalid_argument("custom function needs a body");
  AnalyticFunction f;
  f.kind_ = CatalogKind::Custom;
  f.name_ = std::move(tag);
  f.fn_ = std::make_shared<const std::function<double(double)>>(std::move(fn));
  return f;
}

AnalyticFunction AnalyticFunction::parse(std::string_view name) {
  if (name.starts_with("affine")) {
    double a = 1.0, b = 1.0;
    auto rest = name.substr(6);
    if (!rest.empty()) {
      if (rest.front() != ':') throw std::invalid_argument("unknown catalog function: " + std::string(name));
      rest.remove_prefix(1);
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = rest.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument("malformed affine parameter");
        const std::string key(item.substr(0, eq));
        const std::string value(item.substr(eq + 1));
        std::size_t used = 0;
        double parsed = 0.0;
        try {
          parsed = std::stod(value, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != value.size() || value.empty())
          throw std::invalid_argument("malformed affine parameter value: " + value);
        if (key == "a") a = parsed;
        else if (key == "b") b = parsed;
        else throw std::invalid_argument("unknown affine parameter: " + key);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    }
    return affine(a, b);
  }
  for (const auto kind : kCatalogOrder) {
    if (kind != CatalogKind::Affine && catalog_tag(kind) == name) return catalog(kind);
  }
  throw std::invalid_argument("unknown catalog function: " + std::string(name));
}

double AnalyticFunction::operator()(double x) const {
  if (fn_) return (*fn_)(x);
  return evaluate(kind_, x, a_, b_);
}

bool AnalyticFunction::oscillatory() const noexcept {
  return any_component(*this, [](CatalogKind k) { return is_prop41(k) || is_prop42(k); });
}

AnalyticFunction operator+(const AnalyticFunction& lhs, const AnalyticFunction& rhs) {
  auto sum = AnalyticFunction::custom(lhs.name() + "+" + rhs.name(),
                                      [lhs, rhs](double x) { return lhs(x) + rhs(x); });
  sum.components_ = lhs.components_;
  for (auto k : rhs.components_) {
    if (std::find(sum.components_.begin(), sum.components_.end(), k) == sum.components_.end())
      sum.components_.push_back(k);
  }
  return sum;
}

std::string_view catalog_tag(CatalogKind kind) {
  switch (kind) {
    case CatalogKind::Square: return "square";
    case CatalogKind::XMinusSqrtX: return "x_minus_sqrtx";
    case CatalogKind::Reciprocal: return "reciprocal";
    case CatalogKind::Ex31Phi: return "ex31_phi";
    case CatalogKind::Ex31Psi: return "ex31_psi";
    case CatalogKind::Prop41Phi: return "prop41_phi";
    case CatalogKind::Prop41Psi: return "prop41_psi";
    case CatalogKind::Prop42Phi: return "prop42_phi";
    case CatalogKind::Prop42Psi: return "prop42_psi";
    case CatalogKind::Ex33Phi: return "ex33_phi";
    case CatalogKind::Ex33Psi: return "ex33_psi";
    case CatalogKind::Affine: return "affine";
    case CatalogKind::Custom: return "custom";
  }
  return "custom";
}

std::vector<AnalyticFunction> catalog_functions() {
  std::vector<AnalyticFunction> out;
  for (auto kind : kCatalogOrder) out.push_back(AnalyticFunction::catalog(kind));
  return out;
}

// ---------------------------------------------------------------------------
// Grids

Grid make_log_grid(double x_min, double x_max, Eigen::Index n) {
  if (!(std::isfinite(x_min) && std::isfinite(x_max)) || x_min <= 0.0 || x_max <= 0.0)
    throw std::invalid_argument("log grid bounds must be finite and positive");
  if (!(x_min < x_max)) throw std::invalid_argument("log grid needs x_min < x_max");
  if (n < 2) throw std::invalid_argument("log grid needs at least two knots");
  Eigen::ArrayXd p(n);
  const double lo = std::log(x_min);
  const double span = std::log(x_max) - lo;
  for (Eigen::Index i = 0; i < n; ++i)
    p[i] = std::exp(lo + span * static_cast<double>(i) / static_cast<double>(n - 1));
  p[0] = x_min;
  p[n - 1] = x_max;
  return Grid(std::move(p));
}

Grid grid_union(std::span<const double> fill, std::span<const double> exact) {
  std::vector<std::pair<double, bool>> all;
  all.reserve(fill.size() + exact.size());
  for (double x : fill) all.emplace_back(x, false);
  for (double x : exact) all.emplace_back(x, true);
  // Exact knots sort ahead of equal fill knots.
  std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) {
    return l.first < r.first || (l.first == r.first && l.second && !r.second);
  });
  std::vector<std::pair<double, bool>> kept;
  kept.reserve(all.size());
  for (const auto& cand : all) {
    if (!kept.empty()) {
      auto& last = kept.back();
      const bool close = cand.first - last.first <= 1e-10 * std::abs(cand.first);
      if (close) {
        if (cand.second && !last.second) {
          last = cand;
        } else if (cand.second && last.second && cand.first != last.first) {
          kept.push_back(cand);
        }
        continue;
      }
    }
    kept.push_back(cand);
  }
  std::vector<double> points;
  points.reserve(kept.size());
  for (const auto& k : kept) points.push_back(k.first);
  return Grid(points);
}

double prop41_touch(long k) { return 1.0 / (1.5 * kPi + 2.0 * static_cast<double>(k) * kPi); }
double prop41_mid(long k) { return 1.0 / (2.5 * kPi + 2.0 * static_cast<double>(k) * kPi); }
double prop42_touch(long k) { return 1.5 * kPi + 2.0 * static_cast<double>(k) * kPi; }
double prop42_mid(long k) { return 2.5 * kPi + 2.0 * static_cast<double>(k) * kPi; }

std::vector<double> critical_points(const AnalyticFunction& f, double lo, double hi) {
  std::vector<double> out;
  auto keep = [&](double x) {
    if (x >= lo && x <= hi) out.push_back(x);
  };
  if (any_component(f, is_prop41)) {
    const long k_last = static_cast<long>(std::floor((1.0 / lo - 1.5 * kPi) / (2.0 * kPi))) + 1;
    for (long k = 0; k <= k_last; ++k) {
      keep(prop41_touch(k));
      keep(prop41_mid(k));
    }
  }
  if (any_component(f, is_prop42)) {
    const long k_last = static_cast<long>(std::floor((hi - 1.5 * kPi) / (2.0 * kPi))) + 1;
    for (long k = 0; k <= k_last; ++k) {
      keep(prop42_touch(k));
      keep(prop42_mid(k));
    }
  }
  if (any_component(f, [](CatalogKind k) { return k == CatalogKind::Ex31Phi; })) keep(1.0);
  if (any_component(f, [](CatalogKind k) { return k == CatalogKind::Ex33Psi; })) {
    keep(1.0);
    keep(2.0);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> oscillation_fill(const AnalyticFunction& f, double lo, double hi, int per_period) {
  if (per_period < 1) throw std::invalid_argument("per_period must be positive");
  std::vector<double> out;
  const double step = 2.0 * kPi / per_period;
  if (any_component(f, is_prop41)) {
    // The sine runs in u = 1/x.
    const double u_lo = 1.0 / hi, u_hi = 1.0 / lo;
    for (long j = static_cast<long>(std::floor(u_lo / step)); ; ++j) {
      const double u = (static_cast<double>(j) + 0.5) * step;
      if (u > u_hi) break;
      if (u >= u_lo) out.push_back(1.0 / u);
    }
  }
  if (any_component(f, is_prop42)) {
    for (long j = static_cast<long>(std::floor(lo / step)); ; ++j) {
      const double x = (static_cast<double>(j) + 0.5) * step;
      if (x > hi) break;
      if (x >= lo) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Grid catalog_grid(const AnalyticFunction& f, double x_min, double x_max, Eigen::Index n) {
  const Grid base = make_log_grid(x_min, x_max, n);
  const auto exact = critical_points(f, x_min, x_max);
  if (!f.oscillatory() && exact.empty()) return base;
  std::vector<double> fill(base.view().begin(), base.view().end());
  const auto extra = oscillation_fill(f, x_min, x_max);
  fill.insert(fill.end(), extra.begin(), extra.end());
  return grid_union(fill, exact);
}

// ---------------------------------------------------------------------------
// Sampling

SampledFunction sample(const AnalyticFunction& f, const Grid& grid) {
  Eigen::ArrayXd values(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    values[i] = f(grid[i]);
    if (!std::isfinite(values[i]))
      throw std::domain_error(f.name() + " is not finite at x = " + describe(grid[i]));
  }
  return SampledFunction(grid, std::move(values));
}

double eval_piecewise_linear(const SampledFunction& f, double x) {
  const Grid& g = f.grid();
  if (!g.contains(x))
    throw std::out_of_range("x = " + describe(x) + " is outside [" + describe(g.front()) + ", " +
                            describe(g.back()) + "]");
  const Eigen::Index i = g.bracket(x);
  if (x == g[i]) return f.value(i);
  if (x == g[i + 1]) return f.value(i + 1);
  const double t = (x - g[i]) / (g[i + 1] - g[i]);
  return f.value(i) + t * (f.value(i + 1) - f.value(i));
}

SampledFunction restrict_to(const SampledFunction& f, const Grid& subgrid) {
  Eigen::ArrayXd values(subgrid.size());
  for (Eigen::Index i = 0; i < subgrid.size(); ++i) {
    const auto j = f.grid().find(subgrid[i]);
    if (!j) throw std::invalid_argument("x = " + describe(subgrid[i]) + " is not a knot of the source grid");
    values[i] = f.value(*j);
  }
  return SampledFunction(subgrid, std::move(values));
}

}  // namespace logconvex
