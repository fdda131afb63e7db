#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dtmfilt/pexponent.hpp"
#include "dtmfilt/pointcloud.hpp"

namespace dtmf {

/// Smallest closed ball enclosing a finite point set.
struct Ball {
    std::vector<double> center;
    double radius = 0.0;
};

/// Exact smallest enclosing ball (Welzl's algorithm with move-to-front).
/// Throws ParameterError on an empty cloud.
Ball minimum_enclosing_ball(const PointCloud& points);

struct MinimaxOptions {
    double tol = 1e-6;
    std::size_t max_iterations = 100000;
};

struct MinimaxResult {
    double value = 0.0;   ///< best objective value found (upper bound on the optimum)
    double lower = 0.0;   ///< certified lower bound on the optimum
    std::vector<double> argmin;
    std::size_t iterations = 0;
};

/// Minimizes F(y) = max_i (|y - x_i|^p + w_i^p)^(1/p) over y in R^d for finite p.
///
/// The minimizer lies in the convex hull of the points, so the problem is
/// solved in their affine hull: by interval halving in one dimension and by
/// central-cut ellipsoid iterations otherwise. Each iterate contributes the
/// subgradient certificate F(y*) >= F(y) - sqrt(g' P g), and the solver stops
/// once value - lower <= tol. Throws SolverError carrying (lower, value) when
/// the iteration budget runs out.
MinimaxResult solve_power_minimax(const PointCloud& points, std::span<const double> weights, PExponent p,
                                  const MinimaxOptions& options = {});

/// (r^p + w^p)^(1/p), evaluated without overflow; max(r, w) for p = inf.
double power_combine(double r, double w, PExponent p);

}  // namespace dtmf
