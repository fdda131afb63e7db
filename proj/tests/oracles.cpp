#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Bits {
    std::vector<std::uint64_t> words;

    explicit Bits(std::size_t n) : words((n + 63) / 64, 0) {}
    void flip(std::size_t i) { words[i / 64] ^= std::uint64_t{1} << (i % 64); }
    void add(const Bits& o) {
        for (std::size_t k = 0; k < words.size(); ++k) words[k] ^= o.words[k];
    }
    long top() const {
        for (std::size_t k = words.size(); k-- > 0;) {
            if (words[k]) return static_cast<long>(k * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(words[k])));
        }
        return -1;
    }
};

std::size_t rank_of(std::vector<Bits> vectors) {
    std::map<long, Bits> basis;
    std::size_t rank = 0;
    for (auto& v : vectors) {
        for (long t = v.top(); t >= 0; t = v.top()) {
            auto it = basis.find(t);
            if (it == basis.end()) {
                basis.emplace(t, v);
                ++rank;
                break;
            }
            v.add(it->second);
        }
    }
    return rank;
}

// Cycle space of the chains supported on `cols`, each column given by its boundary.
std::vector<Bits> cycles(const std::vector<Bits>& boundaries, const std::vector<std::size_t>& cols,
                         std::size_t chain_size) {
    std::map<long, std::pair<Bits, Bits>> reduced;  // pivot -> (boundary, chain)
    std::vector<Bits> out;
    for (std::size_t c : cols) {
        Bits bd = boundaries[c];
        Bits chain(chain_size);
        chain.flip(c);
        while (true) {
            const long t = bd.top();
            if (t < 0) {
                out.push_back(chain);
                break;
            }
            auto it = reduced.find(t);
            if (it == reduced.end()) {
                reduced.emplace(t, std::make_pair(bd, chain));
                break;
            }
            bd.add(it->second.first);
            chain.add(it->second.second);
        }
    }
    return out;
}

}  // namespace

std::vector<Entry> standard_rips(const dtmf::PointCloud& cloud, int max_dim) {
    const std::size_t n = cloud.size();
    std::vector<Entry> out;
    const std::size_t limit = std::min<std::size_t>(n, static_cast<std::size_t>(max_dim) + 1);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::uint32_t> vs;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) vs.push_back(i);
        }
        if (vs.size() > limit) continue;
        double value = 0.0;
        for (std::size_t a = 0; a < vs.size(); ++a) {
            for (std::size_t b = a + 1; b < vs.size(); ++b) {
                value = std::max(value, dtmf::distance(cloud.point(vs[a]), cloud.point(vs[b])) / 2.0);
            }
        }
        out.push_back({vs, value});
    }
    return out;
}

std::vector<dtmf::DiagramPoint> rank_diagram(const std::vector<Entry>& entries, int max_hom_dim) {
    std::vector<double> crit;
    for (const auto& e : entries) crit.push_back(e.value);
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    const std::size_t r = crit.size();

    // Simplices grouped by dimension, with positions inside their group.
    std::map<std::vector<std::uint32_t>, std::size_t> position;
    std::vector<std::vector<std::size_t>> by_dim;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::size_t d = entries[i].vertices.size() - 1;
        if (by_dim.size() <= d) by_dim.resize(d + 1);
        position[entries[i].vertices] = by_dim[d].size();
        by_dim[d].push_back(i);
    }
    auto boundaries = [&](std::size_t d) {
        std::vector<Bits> out;
        const std::size_t rows = d == 0 ? 1 : by_dim[d - 1].size();
        for (std::size_t idx : by_dim[d]) {
            Bits b(rows);
            const auto& vs = entries[idx].vertices;
            if (d > 0) {
                for (std::size_t skip = 0; skip < vs.size(); ++skip) {
                    std::vector<std::uint32_t> face;
                    for (std::size_t k = 0; k < vs.size(); ++k) {
                        if (k != skip) face.push_back(vs[k]);
                    }
                    b.flip(position.at(face));
                }
            }
            out.push_back(b);
        }
        return out;
    };

    std::vector<dtmf::DiagramPoint> points;
    for (int k = 0; k <= max_hom_dim && static_cast<std::size_t>(k) < by_dim.size(); ++k) {
        const std::size_t kd = static_cast<std::size_t>(k);
        const std::size_t nk = by_dim[kd].size();
        const std::vector<Bits> bd_k = boundaries(kd);
        const std::vector<Bits> bd_up = kd + 1 < by_dim.size() ? boundaries(kd + 1) : std::vector<Bits>{};

        std::vector<std::vector<Bits>> z(r), b(r);
        for (std::size_t a = 0; a < r; ++a) {
            std::vector<std::size_t> cols;
            for (std::size_t c = 0; c < nk; ++c) {
                if (entries[by_dim[kd][c]].value <= crit[a]) cols.push_back(c);
            }
            z[a] = cycles(bd_k, cols, nk);
            if (kd + 1 < by_dim.size()) {
                for (std::size_t c = 0; c < by_dim[kd + 1].size(); ++c) {
                    if (entries[by_dim[kd + 1][c]].value <= crit[a]) b[a].push_back(bd_up[c]);
                }
            }
        }
        std::vector<std::size_t> rank_b(r);
        for (std::size_t a = 0; a < r; ++a) rank_b[a] = rank_of(b[a]);
        // beta[a][b] = dim image of H_k(K_a) -> H_k(K_b)
        std::vector<std::vector<long>> beta(r, std::vector<long>(r, 0));
        for (std::size_t a = 0; a < r; ++a) {
            for (std::size_t c = a; c < r; ++c) {
                std::vector<Bits> joint = z[a];
                joint.insert(joint.end(), b[c].begin(), b[c].end());
                beta[a][c] = static_cast<long>(rank_of(joint)) - static_cast<long>(rank_b[c]);
            }
        }
        auto B = [&](long a, long c) -> long { return a < 0 ? 0 : beta[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)]; };
        for (long i = 0; i < static_cast<long>(r); ++i) {
            for (long j = i + 1; j < static_cast<long>(r); ++j) {
                const long mult = B(i, j - 1) - B(i, j) - B(i - 1, j - 1) + B(i - 1, j);
                for (long m = 0; m < mult; ++m) {
                    points.push_back({k, crit[static_cast<std::size_t>(i)], crit[static_cast<std::size_t>(j)]});
                }
            }
            const long last = static_cast<long>(r) - 1;
            const long ess = B(i, last) - B(i - 1, last);
            for (long m = 0; m < ess; ++m) points.push_back({k, crit[static_cast<std::size_t>(i)], kInf});
        }
    }
    std::sort(points.begin(), points.end());
    return points;
}

namespace {

double linf(const dtmf::DiagramPoint& a, const dtmf::DiagramPoint& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

void match_rec(const std::vector<dtmf::DiagramPoint>& a, const std::vector<dtmf::DiagramPoint>& b, std::size_t i,
               std::vector<char>& used, double current, double& best) {
    if (current >= best) return;
    if (i == a.size()) {
        double cost = current;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!used[j]) cost = std::max(cost, (b[j].death - b[j].birth) / 2.0);
        }
        best = std::min(best, cost);
        return;
    }
    match_rec(a, b, i + 1, used, std::max(current, (a[i].death - a[i].birth) / 2.0), best);
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (used[j]) continue;
        used[j] = 1;
        match_rec(a, b, i + 1, used, std::max(current, linf(a[i], b[j])), best);
        used[j] = 0;
    }
}

}  // namespace

double exhaustive_bottleneck(const std::vector<dtmf::DiagramPoint>& a, const std::vector<dtmf::DiagramPoint>& b) {
    std::vector<dtmf::DiagramPoint> fa, fb;
    std::vector<double> ea, eb;
    for (const auto& p : a) {
        if (std::isinf(p.death)) {
            ea.push_back(p.birth);
        } else {
            fa.push_back(p);
        }
    }
    for (const auto& p : b) {
        if (std::isinf(p.death)) {
            eb.push_back(p.birth);
        } else {
            fb.push_back(p);
        }
    }
    if (ea.size() != eb.size()) return kInf;
    double ess = ea.empty() ? 0.0 : kInf;
    std::sort(eb.begin(), eb.end());
    do {
        double c = 0.0;
        for (std::size_t k = 0; k < ea.size(); ++k) c = std::max(c, std::abs(ea[k] - eb[k]));
        ess = std::min(ess, c);
    } while (std::next_permutation(eb.begin(), eb.end()));
    double best = kInf;
    std::vector<char> used(fb.size(), 0);
    match_rec(fa, fb, 0, used, 0.0, best);
    return std::max(ess, best);
}

double exhaustive_w2(const dtmf::PointCloud& a, const dtmf::PointCloud& b) {
    std::vector<std::size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = kInf;
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) cost += dtmf::squared_distance(a.point(i), b.point(perm[i]));
        best = std::min(best, cost);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::sqrt(best / static_cast<double>(a.size()));
}

double knn_dtm(const dtmf::PointCloud& cloud, std::span<const double> query, std::size_t k) {
    std::vector<double> sq;
    for (std::size_t i = 0; i < cloud.size(); ++i) sq.push_back(dtmf::squared_distance(cloud.point(i), query));
    std::sort(sq.begin(), sq.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += sq[i];
    return std::sqrt(sum / static_cast<double>(k));
}

}  // namespace oracle
