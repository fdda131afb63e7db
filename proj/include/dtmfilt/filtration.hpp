#pragma once

#include <optional>
#include <span>

#include "dtmfilt/complex.hpp"
#include "dtmfilt/dtm.hpp"
#include "dtmfilt/minimax.hpp"
#include "dtmfilt/pexponent.hpp"
#include "dtmfilt/pointcloud.hpp"

namespace dtmf {

/// Radius r_x(t) of the weighted ball around a point of weight f_x; nullopt
/// while the ball is empty (t < f_x).
std::optional<double> radius(double f_x, double t, PExponent p);

/// Smallest t at which y lies in some weighted ball: min over x of
/// (|x - y|^p + f(x)^p)^(1/p), or max(|x - y|, f(x)) for p = inf.
double power_value(std::span<const double> y, const PointCloud& cloud, const WeightFunction& f, PExponent p);

/// Filtration value of the edge {x, y} given |x - y| and the two weights.
/// Closed forms for p = 1, 2, inf; bisection to `tol` otherwise.
double edge_value(double dist, double f_x, double f_y, PExponent p, double tol = 1e-12);

/// Same quantity computed by bisection for every finite p, ignoring the
/// closed forms. Used to cross-check them.
double edge_value_bisect(double dist, double f_x, double f_y, PExponent p, double tol = 1e-12);

/// Weighted Cech value of the simplex spanned by `points`.
double cech_simplex_value(const PointCloud& points, std::span<const double> weights, PExponent p,
                          const MinimaxOptions& options = {});

/// Flag complex of the weighted Cech 1-skeleton. Simplices with value above
/// t_max are dropped. The default t_max is the diameter of the cloud, raised
/// to max f so that every vertex is kept.
FilteredComplex build_weighted_rips(const PointCloud& cloud, const WeightFunction& f, PExponent p, int max_dim,
                                    std::optional<double> t_max = std::nullopt);

/// Nerve of the weighted balls, by exhaustive enumeration. Throws SizeError
/// when C(n, max_dim + 1) exceeds 10^6. t_max may be +inf. A simplex whose
/// certified lower bound is at most its largest face value gets that value.
FilteredComplex build_weighted_cech(const PointCloud& cloud, const WeightFunction& f, PExponent p, int max_dim,
                                    double t_max, const MinimaxOptions& options = {});

/// Weighted Rips filtration of X with f the DTM of the empirical measure.
FilteredComplex dtm_filtration(const PointCloud& cloud, const DtmParams& params, PExponent p, int max_dim,
                               std::optional<double> t_max = std::nullopt);

/// Weighted Rips filtration of supp(mu) with f the DTM of mu.
FilteredComplex dtm_filtration(const DiscreteMeasure& mu, const DtmParams& params, PExponent p, int max_dim,
                               std::optional<double> t_max = std::nullopt);

}  // namespace dtmf
