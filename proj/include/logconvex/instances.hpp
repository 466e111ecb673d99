#pragma once

// Seeded random instances for property checks.

#include "logconvex/funcspace.hpp"

#include <random>

namespace logconvex {

/// Random strictly increasing knots in [x_lo, x_hi] (endpoints included).
Grid random_grid(std::mt19937_64& rng, Eigen::Index n, double x_lo = 1e-2, double x_hi = 1e2);

/// Independent uniform values in [-amplitude, amplitude].
SampledFunction random_piecewise(std::mt19937_64& rng, const Grid& grid, double amplitude = 10.0);

/// Discretely convex values: chord slopes are sorted uniform draws in
/// [-slope_bound, slope_bound].
SampledFunction random_convex(std::mt19937_64& rng, const Grid& grid, double slope_bound = 5.0);

}  // namespace logconvex
