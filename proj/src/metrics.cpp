#include "dtmfilt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include <json.hpp>

#include "dtmfilt/errors.hpp"
#include "dtmfilt/filtration.hpp"

namespace dtmf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Hopcroft-Karp maximum matching on a bipartite graph given by adjacency lists.
class BipartiteMatcher {
public:
    BipartiteMatcher(std::size_t left, std::size_t right)
        : adj_(left), match_left_(left), match_right_(right), layer_(left) {}

    void add_edge(std::size_t u, std::size_t v) { adj_[u].push_back(v); }

    std::size_t max_matching() {
        std::fill(match_left_.begin(), match_left_.end(), kFree);
        std::fill(match_right_.begin(), match_right_.end(), kFree);
        std::size_t size = 0;
        while (bfs()) {
            for (std::size_t u = 0; u < adj_.size(); ++u) {
                if (match_left_[u] == kFree && dfs(u)) ++size;
            }
        }
        return size;
    }

private:
    static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();

    bool bfs() {
        std::queue<std::size_t> queue;
        bool found = false;
        for (std::size_t u = 0; u < adj_.size(); ++u) {
            if (match_left_[u] == kFree) {
                layer_[u] = 0;
                queue.push(u);
            } else {
                layer_[u] = kFree;
            }
        }
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop();
            for (std::size_t v : adj_[u]) {
                const std::size_t w = match_right_[v];
                if (w == kFree) {
                    found = true;
                } else if (layer_[w] == kFree) {
                    layer_[w] = layer_[u] + 1;
                    queue.push(w);
                }
            }
        }
        return found;
    }

    bool dfs(std::size_t u) {
        for (std::size_t v : adj_[u]) {
            const std::size_t w = match_right_[v];
            if (w == kFree || (layer_[w] == layer_[u] + 1 && dfs(w))) {
                match_left_[u] = v;
                match_right_[v] = u;
                return true;
            }
        }
        layer_[u] = kFree;
        return false;
    }

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> match_left_;
    std::vector<std::size_t> match_right_;
    std::vector<std::size_t> layer_;
};

double linf(const DiagramPoint& a, const DiagramPoint& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_cost(const DiagramPoint& a) { return (a.death - a.birth) / 2.0; }

// Left: points of a, then diagonal copies of b. Right: points of b, then
// diagonal copies of a.
bool feasible(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b, double eps) {
    const std::size_t na = a.size(), nb = b.size();
    BipartiteMatcher matcher(na + nb, nb + na);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            if (linf(a[i], b[j]) <= eps) matcher.add_edge(i, j);
        }
        if (diagonal_cost(a[i]) <= eps) matcher.add_edge(i, nb + i);
    }
    for (std::size_t j = 0; j < nb; ++j) {
        if (diagonal_cost(b[j]) <= eps) matcher.add_edge(na + j, j);
        for (std::size_t i = 0; i < na; ++i) matcher.add_edge(na + j, nb + i);
    }
    return matcher.max_matching() == na + nb;
}

std::string format_number(double v) { return format_real(v); }

}  // namespace

BottleneckResult bottleneck_detail(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim) {
    std::vector<DiagramPoint> fa, fb;
    std::vector<double> ea, eb;
    for (const auto& pt : a.points) {
        if (pt.dim != dim) continue;
        if (pt.essential()) {
            ea.push_back(pt.birth);
        } else {
            fa.push_back(pt);
        }
    }
    for (const auto& pt : b.points) {
        if (pt.dim != dim) continue;
        if (pt.essential()) {
            eb.push_back(pt.birth);
        } else {
            fb.push_back(pt);
        }
    }
    if (ea.size() != eb.size()) {
        return {kInf, "dimension " + std::to_string(dim) + ": " + std::to_string(ea.size()) + " vs " +
                          std::to_string(eb.size()) + " essential classes"};
    }
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    double essential = 0.0;
    for (std::size_t k = 0; k < ea.size(); ++k) essential = std::max(essential, std::abs(ea[k] - eb[k]));

    std::vector<double> candidates{0.0};
    for (const auto& p : fa) {
        candidates.push_back(diagonal_cost(p));
        for (const auto& q : fb) candidates.push_back(linf(p, q));
    }
    for (const auto& q : fb) candidates.push_back(diagonal_cost(q));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // The largest candidate (every point to the diagonal) is always feasible.
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (feasible(fa, fb, candidates[mid])) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return {std::max(essential, candidates[lo]), {}};
}

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim) {
    return bottleneck_detail(a, b, dim).distance;
}

std::string to_string(Theorem theorem) {
    switch (theorem) {
        case Theorem::p44: return "P4.4";
        case Theorem::t46: return "T4.6";
        case Theorem::t413: return "T4.13";
        case Theorem::p48: return "P4.8-bound";
    }
    return "?";
}

Theorem parse_theorem(const std::string& text) {
    if (text == "P4.4") return Theorem::p44;
    if (text == "T4.6") return Theorem::t46;
    if (text == "T4.13") return Theorem::t413;
    if (text == "P4.8" || text == "P4.8-bound") return Theorem::p48;
    throw ParameterError("unknown theorem '" + text + "' (expected P4.4, T4.6, T4.13 or P4.8-bound)");
}

double StabilityReport::term(const std::string& name) const {
    for (const auto& [key, value] : terms) {
        if (key == name) return value;
    }
    throw ParameterError("report has no term '" + name + "'");
}

std::string format_report(const StabilityReport& report) {
    auto number = [](double v) -> nlohmann::ordered_json {
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        return v;
    };
    nlohmann::ordered_json out;
    out["theorem"] = to_string(report.theorem);
    out["m"] = report.m;
    out["p"] = report.p.is_infinite() ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(report.p.value());
    nlohmann::ordered_json terms = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.terms) terms[key] = number(value);
    out["terms"] = terms;
    out["bound"] = number(report.bound);
    out["measured_bottleneck"] =
        report.measured_bottleneck ? number(*report.measured_bottleneck) : nlohmann::ordered_json(nullptr);
    out["satisfied"] = report.satisfied ? nlohmann::ordered_json(*report.satisfied) : nlohmann::ordered_json(nullptr);
    if (report.measured_bottleneck) out["slack"] = number(report.bound - *report.measured_bottleneck);
    out["dims"] = report.dims;
    if (!report.note.empty()) out["note"] = report.note;
    return out.dump(2) + "\n";
}

namespace {

void require_subset(const PointCloud& sub, const PointCloud& super, const std::string& sub_name,
                    const std::string& super_name) {
    if (sub.dim() != super.dim()) throw DimensionError(sub_name + " and " + super_name + " differ in dimension");
    std::set<std::vector<double>> rows;
    for (std::size_t i = 0; i < super.size(); ++i) {
        auto pt = super.point(i);
        rows.emplace(pt.begin(), pt.end());
    }
    for (std::size_t i = 0; i < sub.size(); ++i) {
        auto pt = sub.point(i);
        if (!rows.count(std::vector<double>(pt.begin(), pt.end()))) {
            std::string coords;
            for (std::size_t k = 0; k < pt.size(); ++k) coords += (k ? ", " : "") + format_number(pt[k]);
            throw ParameterError(sub_name + " point " + std::to_string(i) + " (" + coords + ") is not in " +
                                 super_name);
        }
    }
}

double w2_uniform(const PointCloud& a, const PointCloud& b) {
    return wasserstein2(DiscreteMeasure::uniform(a), DiscreteMeasure::uniform(b));
}

StabilityReport bound_four_sets(Theorem theorem, const PointCloud& x, const PointCloud& gamma,
                                const PointCloud& omega, const PointCloud& y, const DtmParams& params,
                                PExponent p, const MinimaxOptions& options) {
    require_subset(gamma, x, "gamma", "x");
    require_subset(omega, y, "omega", "y");
    StabilityReport report;
    report.theorem = theorem;
    report.m = params.m();
    report.p = p;
    const double scale = 1.0 / std::sqrt(params.m());
    const double w_xg = w2_uniform(x, gamma);
    const double w_go = w2_uniform(gamma, omega);
    report.terms.emplace_back("w2_x_gamma", w_xg);
    report.terms.emplace_back("w2_gamma_omega", w_go);
    double w_sum = w_xg + w_go;
    if (!(omega == y)) {
        const double w_oy = w2_uniform(omega, y);
        report.terms.emplace_back("w2_omega_y", w_oy);
        w_sum += w_oy;
    }
    const auto mu_gamma = DiscreteMeasure::uniform(gamma);
    const auto mu_omega = DiscreteMeasure::uniform(omega);
    double c_gamma = 0.0, c_omega = 0.0;
    if (theorem == Theorem::t46) {
        c_gamma = c_const(mu_gamma, params);
        c_omega = c_const(mu_omega, params);
    } else {
        c_gamma = c_const_p(mu_gamma, params, p, options);
        c_omega = c_const_p(mu_omega, params, p, options);
    }
    report.terms.emplace_back("c_gamma", c_gamma);
    report.terms.emplace_back("c_omega", c_omega);
    report.bound = scale * w_sum + c_gamma + c_omega;
    return report;
}

}  // namespace

StabilityReport bound_p44(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const DtmParams& params,
                          PExponent p) {
    StabilityReport report;
    report.theorem = Theorem::p44;
    report.m = params.m();
    report.p = p;
    const double w = wasserstein2(mu, nu);
    const double h = hausdorff(mu.support(), nu.support());
    report.terms.emplace_back("w2_mu_nu", w);
    report.terms.emplace_back("hausdorff_x_y", h);
    report.bound = w / std::sqrt(params.m()) + p.two_pow_inverse() * h;
    return report;
}

StabilityReport bound_t46(const PointCloud& x, const PointCloud& gamma, const PointCloud& omega, const PointCloud& y,
                          const DtmParams& params) {
    return bound_four_sets(Theorem::t46, x, gamma, omega, y, params, PExponent(1.0), {});
}

StabilityReport bound_t413(const PointCloud& x, const PointCloud& gamma, const PointCloud& omega,
                           const PointCloud& y, const DtmParams& params, PExponent p,
                           const MinimaxOptions& options) {
    return bound_four_sets(Theorem::t413, x, gamma, omega, y, params, p, options);
}

StabilityReport bound_p48(const DiscreteMeasure& mu, const PointCloud& x, const DtmParams& params) {
    if (mu.dim() != x.dim()) throw DimensionError("measure and cloud differ in dimension");
    StabilityReport report;
    report.theorem = Theorem::p48;
    report.m = params.m();
    const double w = wasserstein2(mu, DiscreteMeasure::uniform(x));
    const double eps = hausdorff(mu.support().concat(x), x);
    const double c = c_const(mu, params);
    report.terms.emplace_back("w2_mu_mux", w);
    report.terms.emplace_back("epsilon", eps);
    report.terms.emplace_back("c_mu", c);
    report.bound = w / std::sqrt(params.m()) + 2.0 * eps + c;
    return report;
}

StabilityReport certify(Theorem theorem, const CertifyInputs& inputs, const DtmParams& params, PExponent p,
                        const CertifyOptions& options) {
    auto need = [&](const auto& field, const char* name) -> const auto& {
        if (!field) throw ParameterError(to_string(theorem) + " needs input '" + name + "'");
        return *field;
    };

    StabilityReport report;
    FilteredComplex first, second;
    PointCloud union_cloud;
    switch (theorem) {
        case Theorem::p48: {
            report = bound_p48(need(inputs.mu, "mu"), need(inputs.x, "x"), params);
            report.p = p;
            report.dims = options.dims;
            report.note = "bound only; the sublevel filtration of the DTM is not computed";
            return report;
        }
        case Theorem::p44: {
            const auto& mu = need(inputs.mu, "mu");
            const auto& nu = need(inputs.nu, "nu");
            report = bound_p44(mu, nu, params, p);
            union_cloud = mu.support().concat(nu.support());
            const double t_max = options.t_max ? *options.t_max : diameter(union_cloud);
            first = dtm_filtration(mu, params, p, options.max_dim, t_max);
            second = dtm_filtration(nu, params, p, options.max_dim, t_max);
            break;
        }
        case Theorem::t46:
        case Theorem::t413: {
            if (theorem == Theorem::t46 && p != PExponent(1.0)) {
                throw ParameterError("T4.6 holds for p = 1; use T4.13 for other exponents");
            }
            const auto& x = need(inputs.x, "x");
            const auto& gamma = need(inputs.gamma, "gamma");
            const PointCloud& omega = inputs.omega ? *inputs.omega : gamma;
            const PointCloud& y = inputs.y ? *inputs.y : omega;
            report = theorem == Theorem::t46 ? bound_t46(x, gamma, omega, y, params)
                                             : bound_t413(x, gamma, omega, y, params, p, options.solver);
            union_cloud = x.concat(y);
            const double t_max = options.t_max ? *options.t_max : diameter(union_cloud);
            first = dtm_filtration(x, params, p, options.max_dim, t_max);
            second = dtm_filtration(y, params, p, options.max_dim, t_max);
            break;
        }
    }
    report.dims = options.dims;

    ReduceOptions reduce_options;
    reduce_options.dims = options.dims;
    reduce_options.strategy = options.strategy;
    const PersistenceDiagram da = reduce(first, reduce_options);
    const PersistenceDiagram db = reduce(second, reduce_options);
    double measured = 0.0;
    for (int d : options.dims) {
        const BottleneckResult r = bottleneck_detail(da, db, d);
        if (r.distance > measured) measured = r.distance;
        if (!r.explanation.empty()) {
            if (!report.note.empty()) report.note += "; ";
            report.note += r.explanation;
        }
    }
    report.measured_bottleneck = measured;
    report.satisfied = measured <= report.bound + 1e-9;
    return report;
}

}  // namespace dtmf
