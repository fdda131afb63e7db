#include <cmath>
#include <limits>
#include <numeric>

#include "dtmfilt/errors.hpp"
#include "dtmfilt/metrics.hpp"

namespace dtmf {

std::pair<std::int64_t, std::int64_t> snap_rational(double x, std::int64_t max_den) {
    if (!std::isfinite(x) || x < 0.0) throw ParameterError("cannot snap a negative or non-finite mass");
    // Continued-fraction convergents, then the best semiconvergent.
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double rest = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double whole = std::floor(rest);
        if (whole > 1e15) break;
        const auto a = static_cast<std::int64_t>(whole);
        const std::int64_t q2 = q0 + a * q1;
        if (q2 > max_den) {
            const std::int64_t k = (max_den - q0) / q1;
            const std::int64_t ps = p0 + k * p1, qs = q0 + k * q1;
            const double err_semi = std::abs(x - static_cast<double>(ps) / static_cast<double>(qs));
            const double err_conv = std::abs(x - static_cast<double>(p1) / static_cast<double>(q1));
            if (k > 0 && err_semi < err_conv) return {ps, qs};
            return {p1, q1};
        }
        const std::int64_t p2 = p0 + a * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = rest - whole;
        if (frac <= 0.0 || static_cast<double>(p1) / static_cast<double>(q1) == x) break;
        rest = 1.0 / frac;
    }
    return {p1, q1};
}

namespace {

constexpr std::int64_t kMaxDen = 1000000;

using Fraction = std::pair<std::int64_t, std::int64_t>;

std::vector<Fraction> snap_masses(std::span<const double> masses) {
    std::vector<Fraction> out;
    out.reserve(masses.size());
    for (double w : masses) {
        const Fraction fr = snap_rational(w, kMaxDen);
        if (std::abs(static_cast<double>(fr.first) / static_cast<double>(fr.second) - w) > 1e-9) {
            throw ParameterError("mass " + std::to_string(w) + " is not a fraction with denominator <= 10^6");
        }
        out.push_back(fr);
    }
    return out;
}

void extend_scale(std::int64_t& scale, const std::vector<Fraction>& fracs) {
    for (const auto& fr : fracs) {
        const std::int64_t g = std::gcd(scale, fr.second);
        if (scale / g > std::numeric_limits<std::int64_t>::max() / 1024 / fr.second) {
            throw ParameterError("mass denominators have no usable common multiple");
        }
        scale = scale / g * fr.second;
    }
}

std::vector<std::int64_t> scaled(const std::vector<Fraction>& fracs, std::int64_t scale) {
    std::vector<std::int64_t> out;
    out.reserve(fracs.size());
    for (const auto& fr : fracs) out.push_back(fr.first * (scale / fr.second));
    return out;
}

}  // namespace

double wasserstein2(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    if (mu.dim() != nu.dim()) throw DimensionError("measures live in different dimensions");
    const double sum_mu = std::accumulate(mu.masses().begin(), mu.masses().end(), 0.0);
    const double sum_nu = std::accumulate(nu.masses().begin(), nu.masses().end(), 0.0);
    if (std::abs(sum_mu - sum_nu) > 1e-12) throw ParameterError("measures have different total mass");

    const auto frac_mu = snap_masses(mu.masses());
    const auto frac_nu = snap_masses(nu.masses());
    std::int64_t scale = 1;
    extend_scale(scale, frac_mu);
    extend_scale(scale, frac_nu);
    const std::vector<std::int64_t> supply = scaled(frac_mu, scale);
    const std::vector<std::int64_t> demand = scaled(frac_nu, scale);
    if (std::accumulate(supply.begin(), supply.end(), std::int64_t{0}) !=
        std::accumulate(demand.begin(), demand.end(), std::int64_t{0})) {
        throw ParameterError("measures have different total mass after snapping to fractions");
    }

    const std::size_t n1 = mu.size();
    const std::size_t n2 = nu.size();
    std::vector<double> cost(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            cost[i * n2 + j] = squared_distance(mu.support().point(i), nu.support().point(j));
        }
    }

    // Successive shortest paths. Nodes: 0 = source, 1..n1 left, n1+1..n1+n2
    // right, n1+n2+1 = sink. Left-to-right arcs are uncapacitated.
    const std::size_t nodes = n1 + n2 + 2;
    const std::size_t source = 0, sink = nodes - 1;
    auto left = [](std::size_t i) { return 1 + i; };
    auto right = [n1](std::size_t j) { return 1 + n1 + j; };
    std::vector<std::int64_t> flow(n1 * n2, 0);
    std::vector<std::int64_t> rem_supply = supply;
    std::vector<std::int64_t> rem_demand = demand;
    std::vector<double> potential(nodes, 0.0);
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(nodes);
    std::vector<std::size_t> parent(nodes);
    std::vector<char> done(nodes);

    std::int64_t remaining = std::accumulate(demand.begin(), demand.end(), std::int64_t{0});
    while (remaining > 0) {
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(done.begin(), done.end(), 0);
        dist[source] = 0.0;
        auto relax = [&](std::size_t u, std::size_t v, double c) {
            if (done[v]) return;
            const double nd = dist[u] + c + potential[u] - potential[v];
            if (nd < dist[v]) {
                dist[v] = nd;
                parent[v] = u;
            }
        };
        for (std::size_t step = 0; step < nodes; ++step) {
            std::size_t u = nodes;
            for (std::size_t v = 0; v < nodes; ++v) {
                if (!done[v] && dist[v] < inf && (u == nodes || dist[v] < dist[u])) u = v;
            }
            if (u == nodes) break;
            done[u] = 1;
            if (u == source) {
                for (std::size_t i = 0; i < n1; ++i) {
                    if (rem_supply[i] > 0) relax(u, left(i), 0.0);
                }
            } else if (u <= n1) {
                const std::size_t i = u - 1;
                for (std::size_t j = 0; j < n2; ++j) relax(u, right(j), cost[i * n2 + j]);
            } else if (u != sink) {
                const std::size_t j = u - 1 - n1;
                for (std::size_t i = 0; i < n1; ++i) {
                    if (flow[i * n2 + j] > 0) relax(u, left(i), -cost[i * n2 + j]);
                }
                if (rem_demand[j] > 0) relax(u, sink, 0.0);
            }
        }
        if (!(dist[sink] < inf)) throw Error("transport problem has no feasible plan");
        for (std::size_t v = 0; v < nodes; ++v) potential[v] += dist[v] < inf ? dist[v] : dist[sink];

        // Bottleneck capacity along the path.
        std::int64_t amount = std::numeric_limits<std::int64_t>::max();
        for (std::size_t v = sink; v != source; v = parent[v]) {
            const std::size_t u = parent[v];
            if (u == source) {
                amount = std::min(amount, rem_supply[v - 1]);
            } else if (v == sink) {
                amount = std::min(amount, rem_demand[u - 1 - n1]);
            } else if (u > n1) {
                amount = std::min(amount, flow[(v - 1) * n2 + (u - 1 - n1)]);
            }
        }
        for (std::size_t v = sink; v != source; v = parent[v]) {
            const std::size_t u = parent[v];
            if (u == source) {
                rem_supply[v - 1] -= amount;
            } else if (v == sink) {
                rem_demand[u - 1 - n1] -= amount;
            } else if (u <= n1) {
                flow[(u - 1) * n2 + (v - 1 - n1)] += amount;
            } else {
                flow[(v - 1) * n2 + (u - 1 - n1)] -= amount;
            }
        }
        remaining -= amount;
    }

    double total = 0.0;
    for (std::size_t k = 0; k < flow.size(); ++k) {
        if (flow[k] > 0) total += static_cast<double>(flow[k]) * cost[k];
    }
    return std::sqrt(total / static_cast<double>(scale));
}

}  // namespace dtmf
