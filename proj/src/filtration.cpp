#include "dtmfilt/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dtmfilt/errors.hpp"

namespace dtmf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (t^p - f^p)^(1/p) for t >= f >= 0, scaled to avoid overflow.
double radius_unchecked(double f, double t, double p) {
    if (t <= 0.0) return 0.0;
    const double ratio = f / t;
    return t * std::pow(std::max(0.0, 1.0 - std::pow(ratio, p)), 1.0 / p);
}

double branch_threshold(double f_x, double f_y, PExponent p) {
    const double hi = std::max(f_x, f_y);
    const double lo = std::min(f_x, f_y);
    if (p.is_infinite()) return hi;
    return radius_unchecked(lo, hi, p.value());
}

void check_weights(double f_x, double f_y) {
    if (!(f_x >= 0.0) || !(f_y >= 0.0)) throw ParameterError("weights must be nonnegative");
}

}  // namespace

std::optional<double> radius(double f_x, double t, PExponent p) {
    if (t < f_x) return std::nullopt;
    if (p.is_infinite()) return t;
    return radius_unchecked(f_x, t, p.value());
}

double power_value(std::span<const double> y, const PointCloud& cloud, const WeightFunction& f, PExponent p) {
    if (cloud.empty()) throw ParameterError("power_value needs a nonempty cloud");
    if (y.size() != cloud.dim()) throw DimensionError("query dimension does not match the cloud");
    if (f.size() != cloud.size()) throw ParameterError("one weight per point is required");
    double best = kInf;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        best = std::min(best, power_combine(distance(y, cloud.point(i)), f[i], p));
    }
    return best;
}

double edge_value_bisect(double dist, double f_x, double f_y, PExponent p, double tol) {
    check_weights(f_x, f_y);
    const double hi_f = std::max(f_x, f_y);
    if (p.is_infinite()) return std::max(hi_f, dist / 2.0);
    if (dist <= branch_threshold(f_x, f_y, p)) return hi_f;
    const double q = p.value();
    double lo = hi_f;
    double hi = power_combine(dist, hi_f, p);
    while (hi - lo > tol) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) break;
        const double reach = radius_unchecked(f_x, mid, q) + radius_unchecked(f_y, mid, q);
        if (reach >= dist) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return lo + (hi - lo) / 2.0;
}

double edge_value(double dist, double f_x, double f_y, PExponent p, double tol) {
    check_weights(f_x, f_y);
    if (p.is_infinite()) return std::max({f_x, f_y, dist / 2.0});
    if (dist <= branch_threshold(f_x, f_y, p)) return std::max(f_x, f_y);
    if (p.value() == 1.0) return (f_x + f_y + dist) / 2.0;
    if (p.value() == 2.0) {
        const double sum = f_x + f_y;
        const double diff = f_x - f_y;
        return std::sqrt((sum * sum + dist * dist) * (diff * diff + dist * dist)) / (2.0 * dist);
    }
    return edge_value_bisect(dist, f_x, f_y, p, tol);
}

double cech_simplex_value(const PointCloud& points, std::span<const double> weights, PExponent p,
                          const MinimaxOptions& options) {
    if (points.empty()) throw ParameterError("a simplex needs at least one point");
    if (weights.size() != points.size()) throw ParameterError("one weight per point is required");
    if (points.size() == 1) return weights[0];
    if (points.size() == 2) return edge_value(distance(points.point(0), points.point(1)), weights[0], weights[1], p);
    return simplex_filtration_value(points, weights, p, options);
}

FilteredComplex build_weighted_rips(const PointCloud& cloud, const WeightFunction& f, PExponent p, int max_dim,
                                    std::optional<double> t_max) {
    if (f.size() != cloud.size()) throw ParameterError("one weight per point is required");
    if (max_dim < 0) throw ParameterError("max_dim must be >= 0");
    if (t_max && (std::isnan(*t_max) || *t_max <= 0.0)) throw ParameterError("t_max must be positive");
    const double limit = t_max ? *t_max : std::max(diameter(cloud), f.size() == 0 ? 0.0 : f.max());

    const std::size_t n = cloud.size();
    const DistanceMatrix dist = pairwise_distances(cloud);
    std::vector<double> adj(n * n, kInf);
    std::vector<std::vector<Vertex>> upper(n);
    std::vector<char> present(n, 0);
    for (std::size_t i = 0; i < n; ++i) present[i] = f[i] <= limit ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!present[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!present[j]) continue;
            const double v = edge_value(dist(i, j), f[i], f[j], p);
            if (v <= limit) {
                adj[i * n + j] = adj[j * n + i] = v;
                upper[i].push_back(static_cast<Vertex>(j));
            }
        }
    }

    ComplexBuilder builder(n);
    std::vector<Vertex> clique;
    std::vector<std::vector<Vertex>> candidates(static_cast<std::size_t>(max_dim) + 1);

    // Depth-first clique enumeration; candidates[d] are common upper neighbours
    // of the current d-simplex.
    auto expand = [&](auto&& self, std::size_t depth, double value) -> void {
        builder.add(clique, value);
        if (depth >= static_cast<std::size_t>(max_dim)) return;
        for (Vertex u : candidates[depth]) {
            double next = value;
            for (Vertex w : clique) next = std::max(next, adj[w * n + u]);
            auto& out = candidates[depth + 1];
            out.clear();
            const auto& cand = candidates[depth];
            const auto& nb = upper[u];
            std::set_intersection(std::upper_bound(cand.begin(), cand.end(), u), cand.end(), nb.begin(), nb.end(),
                                  std::back_inserter(out));
            clique.push_back(u);
            self(self, depth + 1, next);
            clique.pop_back();
        }
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (!present[v]) continue;
        clique.assign(1, static_cast<Vertex>(v));
        candidates[0] = upper[v];
        expand(expand, 0, f[v]);
    }
    FilteredComplex out = std::move(builder).build();
    if (std::isfinite(limit)) out.set_truncation(limit);
    return out;
}

FilteredComplex build_weighted_cech(const PointCloud& cloud, const WeightFunction& f, PExponent p, int max_dim,
                                    double t_max, const MinimaxOptions& options) {
    if (f.size() != cloud.size()) throw ParameterError("one weight per point is required");
    if (max_dim < 0) throw ParameterError("max_dim must be >= 0");
    if (std::isnan(t_max) || t_max <= 0.0) throw ParameterError("t_max must be positive");
    const std::size_t n = cloud.size();
    const int top = std::min<int>(max_dim, static_cast<int>(n) - 1);
    ComplexBuilder builder(n);
    if (n == 0) return std::move(builder).build();

    const SimplexKeys keys(n, top);
    constexpr std::uint64_t guard = 1000000;
    for (int d = 0; d <= top; ++d) {
        if (keys.binomial(n, static_cast<std::size_t>(d) + 1) > guard) {
            throw SizeError("Cech complex has more than 10^6 simplices of dimension " + std::to_string(d));
        }
    }

    std::vector<std::vector<double>> values(static_cast<std::size_t>(top) + 1);
    for (int d = 0; d <= top; ++d) {
        const std::size_t k = static_cast<std::size_t>(d) + 1;
        values[static_cast<std::size_t>(d)].assign(keys.binomial(n, k), kInf);
        std::vector<Vertex> combo(k);
        for (std::size_t i = 0; i < k; ++i) combo[i] = static_cast<Vertex>(i);
        while (true) {
            double face_max = 0.0;
            if (d > 0) {
                for (std::size_t skip = 0; skip < k; ++skip) {
                    face_max = std::max(face_max, values[static_cast<std::size_t>(d - 1)][keys.facet_key(combo, skip)]);
                }
            }
            if (face_max <= t_max) {
                std::vector<std::size_t> idx(combo.begin(), combo.end());
                const PointCloud pts = cloud.subset(idx);
                std::vector<double> w(k);
                for (std::size_t i = 0; i < k; ++i) w[i] = f[combo[i]];
                double v = 0.0;
                if (d >= 2 && !p.is_infinite()) {
                    // Snap to the faces when the certified interval reaches them.
                    const MinimaxResult r = solve_power_minimax(pts, w, p, options);
                    v = r.lower <= face_max ? face_max : r.value;
                } else {
                    v = std::max(face_max, cech_simplex_value(pts, w, p, options));
                }
                if (v <= t_max) {
                    values[static_cast<std::size_t>(d)][keys.key(combo)] = v;
                    builder.add(combo, v);
                }
            }
            // next combination in lexicographic order
            std::size_t i = k;
            while (i > 0 && combo[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++combo[i - 1];
            for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
        }
    }
    FilteredComplex out = std::move(builder).build();
    if (std::isfinite(t_max)) out.set_truncation(t_max);
    return out;
}

FilteredComplex dtm_filtration(const PointCloud& cloud, const DtmParams& params, PExponent p, int max_dim,
                               std::optional<double> t_max) {
    return build_weighted_rips(cloud, dtm_weights(cloud, params), p, max_dim, t_max);
}

FilteredComplex dtm_filtration(const DiscreteMeasure& mu, const DtmParams& params, PExponent p, int max_dim,
                               std::optional<double> t_max) {
    return build_weighted_rips(mu.support(), dtm_weights(mu, params), p, max_dim, t_max);
}

}  // namespace dtmf
