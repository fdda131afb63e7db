#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dtmfilt/minimax.hpp"
#include "dtmfilt/pexponent.hpp"
#include "dtmfilt/pointcloud.hpp"

namespace dtmf {

/// Mass parameter of the distance-to-measure, 0 < m < 1.
class DtmParams {
public:
    explicit DtmParams(double m);

    /// Decimal ("0.1") or exact ratio ("3/40").
    static DtmParams parse(const std::string& text);

    double m() const noexcept { return m_; }

private:
    double m_;
};

/// Nonnegative finite weights, one per point of an associated cloud.
class WeightFunction {
public:
    WeightFunction() = default;
    explicit WeightFunction(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double max() const;

private:
    std::vector<double> values_;
};

/// Distance to the measure `mu` with mass parameter m at `query`.
///
/// Uses delta_{mu,t}(x) = inf{ r : mu(B(x, r)) > t } literally: with support
/// sorted by distance r_1 <= r_2 <= ... and cumulative masses M_j, the result
/// is sqrt( (1/m) * sum_j (min(m, M_j) - min(m, M_{j-1})) r_j^2 ).
double dtm(const DiscreteMeasure& mu, std::span<const double> query, const DtmParams& params);

/// Values of the DTM of `mu` on each point of `at`.
WeightFunction dtm_values(const DiscreteMeasure& mu, const PointCloud& at, const DtmParams& params);

/// DTM of the empirical measure of X, evaluated on X.
WeightFunction dtm_weights(const PointCloud& cloud, const DtmParams& params);

/// DTM of `mu` evaluated on its own support.
WeightFunction dtm_weights(const DiscreteMeasure& mu, const DtmParams& params);

/// c(mu, m): supremum of the DTM over the support of mu.
double c_const(const DiscreteMeasure& mu, const DtmParams& params);

/// Filtration value of the full simplex on `points` in the weighted Cech
/// filtration: the smallest t at which all balls B_w(x_i, t) share a point.
/// Finite p goes through the minimax solver (accurate to options.tol); p = inf
/// is max(max_i w_i, radius of the smallest enclosing ball), computed exactly.
double simplex_filtration_value(const PointCloud& points, std::span<const double> weights, PExponent p,
                                const MinimaxOptions& options = {});

/// t_mu(supp mu): simplex_filtration_value of the support weighted by d_mu.
double support_filtration_value(const DiscreteMeasure& mu, const DtmParams& params, PExponent p,
                                const MinimaxOptions& options = {});

/// c(mu, m, p) = c(mu, m) + (1 - 1/p) t_mu(supp mu). Equals c(mu, m) when p = 1.
double c_const_p(const DiscreteMeasure& mu, const DtmParams& params, PExponent p,
                 const MinimaxOptions& options = {});

}  // namespace dtmf
