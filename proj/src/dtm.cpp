#include "dtmfilt/dtm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "dtmfilt/errors.hpp"

namespace dtmf {

DtmParams::DtmParams(double m) : m_(m) {
    if (!(m > 0.0 && m < 1.0)) throw ParameterError("m must lie in (0, 1), got " + std::to_string(m));
}

namespace {

double parse_number(std::string_view text, const std::string& what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParameterError("cannot parse " + what + " '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

DtmParams DtmParams::parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return DtmParams(parse_number(text, "m"));
    const double num = parse_number(std::string_view(text).substr(0, slash), "m numerator");
    const double den = parse_number(std::string_view(text).substr(slash + 1), "m denominator");
    if (den == 0.0) throw ParameterError("m has a zero denominator");
    return DtmParams(num / den);
}

WeightFunction::WeightFunction(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("weights must be nonnegative and finite");
    }
}

double WeightFunction::max() const {
    double best = 0.0;
    for (double v : values_) best = std::max(best, v);
    return best;
}

double dtm(const DiscreteMeasure& mu, std::span<const double> query, const DtmParams& params) {
    const PointCloud& support = mu.support();
    if (query.size() != support.dim()) {
        throw DimensionError("query of dimension " + std::to_string(query.size()) + " against a support in R^" +
                             std::to_string(support.dim()));
    }
    const auto masses = mu.masses();
    std::vector<std::pair<double, double>> by_distance;  // (squared distance, mass)
    by_distance.reserve(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        by_distance.emplace_back(squared_distance(query, support.point(i)), masses[i]);
    }
    std::sort(by_distance.begin(), by_distance.end());

    const double m = params.m();
    double cumulative = 0.0;
    double integral = 0.0;
    for (const auto& [r2, mass] : by_distance) {
        const double before = std::min(m, cumulative);
        cumulative += mass;
        const double after = std::min(m, cumulative);
        integral += (after - before) * r2;
        if (cumulative >= m) break;
    }
    return std::sqrt(integral / m);
}

WeightFunction dtm_values(const DiscreteMeasure& mu, const PointCloud& at, const DtmParams& params) {
    std::vector<double> values(at.size());
    for (std::size_t i = 0; i < at.size(); ++i) values[i] = dtm(mu, at.point(i), params);
    return WeightFunction(std::move(values));
}

WeightFunction dtm_weights(const PointCloud& cloud, const DtmParams& params) {
    if (cloud.empty()) throw ParameterError("DTM weights of an empty cloud");
    return dtm_values(DiscreteMeasure::uniform(cloud), cloud, params);
}

WeightFunction dtm_weights(const DiscreteMeasure& mu, const DtmParams& params) {
    return dtm_values(mu, mu.support(), params);
}

double c_const(const DiscreteMeasure& mu, const DtmParams& params) {
    return dtm_weights(mu, params).max();
}

double simplex_filtration_value(const PointCloud& points, std::span<const double> weights, PExponent p,
                                const MinimaxOptions& options) {
    if (points.empty()) throw ParameterError("simplex filtration value of an empty simplex");
    if (weights.size() != points.size()) throw ParameterError("one weight per point is required");
    if (points.size() == 1) return weights[0];
    if (p.is_infinite()) {
        const double heaviest = *std::max_element(weights.begin(), weights.end());
        return std::max(heaviest, minimum_enclosing_ball(points).radius);
    }
    return solve_power_minimax(points, weights, p, options).value;
}

double support_filtration_value(const DiscreteMeasure& mu, const DtmParams& params, PExponent p,
                                const MinimaxOptions& options) {
    const WeightFunction f = dtm_weights(mu, params);
    return simplex_filtration_value(mu.support(), f.values(), p, options);
}

double c_const_p(const DiscreteMeasure& mu, const DtmParams& params, PExponent p, const MinimaxOptions& options) {
    const WeightFunction f = dtm_weights(mu, params);
    if (p.kappa() == 0.0) return f.max();
    return f.max() + p.kappa() * simplex_filtration_value(mu.support(), f.values(), p, options);
}

}  // namespace dtmf
