#include "dtmfilt/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>

#include "dtmfilt/errors.hpp"

namespace dtmf {

double power_combine(double r, double w, PExponent p) {
    if (p.is_infinite()) return std::max(r, w);
    const double q = p.value();
    if (q == 1.0) return r + w;
    if (q == 2.0) return std::hypot(r, w);
    const double s = std::max(r, w);
    if (s == 0.0) return 0.0;
    return s * std::pow(std::pow(r / s, q) + std::pow(w / s, q), 1.0 / q);
}

// ---------------------------------------------------------------------------
// Smallest enclosing ball

namespace {

struct BallSq {
    std::vector<double> center;
    double radius_sq = -1.0;  // negative: empty ball

    bool contains(std::span<const double> p) const {
        if (radius_sq < 0.0) return false;
        return squared_distance(center, p) <= radius_sq * (1.0 + 1e-12) + 1e-300;
    }
};

// Smallest ball having every boundary point on its sphere, centered in their
// affine hull. Affinely dependent boundary points are dropped.
BallSq ball_through(const PointCloud& pts, const std::vector<std::size_t>& boundary) {
    BallSq ball;
    if (boundary.empty()) return ball;
    const std::size_t d = pts.dim();
    auto origin = pts.point(boundary.front());
    ball.center.assign(origin.begin(), origin.end());
    ball.radius_sq = 0.0;
    const std::size_t k = boundary.size() - 1;
    if (k == 0) return ball;

    // Solve sum_l lambda_l 2 <q_j, q_l> = <q_j, q_j> with q_j = b_j - b_0.
    std::vector<std::vector<double>> q(k, std::vector<double>(d));
    for (std::size_t j = 0; j < k; ++j) {
        auto b = pts.point(boundary[j + 1]);
        for (std::size_t c = 0; c < d; ++c) q[j][c] = b[c] - origin[c];
    }
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1));
    double scale = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t l = 0; l < k; ++l) {
            double dot = 0.0;
            for (std::size_t c = 0; c < d; ++c) dot += q[j][c] * q[l][c];
            a[j][l] = 2.0 * dot;
        }
        a[j][k] = a[j][j] / 2.0;
        scale = std::max(scale, a[j][j]);
    }
    std::vector<bool> used(k, true);
    std::vector<std::size_t> pivot_row(k, k);
    std::size_t row = 0;
    for (std::size_t col = 0; col < k && row < k; ++col) {
        std::size_t best = row;
        for (std::size_t r = row + 1; r < k; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
        }
        if (std::abs(a[best][col]) <= 1e-12 * scale) {
            used[col] = false;
            continue;
        }
        std::swap(a[row], a[best]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == row || a[r][col] == 0.0) continue;
            const double factor = a[r][col] / a[row][col];
            for (std::size_t c = col; c <= k; ++c) a[r][c] -= factor * a[row][c];
        }
        pivot_row[col] = row;
        ++row;
    }
    for (std::size_t col = 0; col < k; ++col) {
        if (!used[col]) continue;
        const std::size_t r = pivot_row[col];
        const double lambda = a[r][k] / a[r][col];
        for (std::size_t c = 0; c < d; ++c) ball.center[c] += lambda * q[col][c];
    }
    for (std::size_t b : boundary) {
        ball.radius_sq = std::max(ball.radius_sq, squared_distance(ball.center, pts.point(b)));
    }
    return ball;
}

BallSq move_to_front_ball(const PointCloud& pts, std::list<std::size_t>& order, std::list<std::size_t>::iterator end,
                          std::vector<std::size_t>& boundary) {
    BallSq ball = ball_through(pts, boundary);
    if (boundary.size() == pts.dim() + 1) return ball;
    for (auto it = order.begin(); it != end;) {
        const std::size_t idx = *it;
        auto next = std::next(it);
        if (!ball.contains(pts.point(idx))) {
            boundary.push_back(idx);
            ball = move_to_front_ball(pts, order, it, boundary);
            boundary.pop_back();
            order.splice(order.begin(), order, it);
        }
        it = next;
    }
    return ball;
}

}  // namespace

Ball minimum_enclosing_ball(const PointCloud& points) {
    if (points.empty()) throw ParameterError("enclosing ball of an empty set");
    std::list<std::size_t> order;
    for (std::size_t i = 0; i < points.size(); ++i) order.push_back(i);
    std::vector<std::size_t> boundary;
    BallSq ball = move_to_front_ball(points, order, order.end(), boundary);
    // The radius is the exact max distance to the computed center.
    double r2 = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        r2 = std::max(r2, squared_distance(ball.center, points.point(i)));
    }
    return Ball{std::move(ball.center), std::sqrt(r2)};
}

// ---------------------------------------------------------------------------
// Weighted minimax

namespace {

// Points expressed in an orthonormal basis of their affine hull.
struct HullCoordinates {
    std::size_t dim = 0;
    std::vector<double> coords;  // row-major, dim per point
    std::vector<double> origin;
    std::vector<std::vector<double>> basis;
};

HullCoordinates affine_hull(const PointCloud& pts) {
    HullCoordinates hull;
    const std::size_t d = pts.dim();
    auto x0 = pts.point(0);
    hull.origin.assign(x0.begin(), x0.end());
    double scale = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) scale = std::max(scale, distance(pts.point(i), x0));
    for (std::size_t i = 1; i < pts.size() && hull.basis.size() < d; ++i) {
        std::vector<double> v(d);
        auto xi = pts.point(i);
        for (std::size_t c = 0; c < d; ++c) v[c] = xi[c] - x0[c];
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : hull.basis) {
                double dot = 0.0;
                for (std::size_t c = 0; c < d; ++c) dot += v[c] * b[c];
                for (std::size_t c = 0; c < d; ++c) v[c] -= dot * b[c];
            }
        }
        double norm = 0.0;
        for (double c : v) norm += c * c;
        norm = std::sqrt(norm);
        if (norm > 1e-12 * scale) {
            for (double& c : v) c /= norm;
            hull.basis.push_back(std::move(v));
        }
    }
    hull.dim = hull.basis.size();
    hull.coords.resize(pts.size() * hull.dim);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto xi = pts.point(i);
        for (std::size_t b = 0; b < hull.dim; ++b) {
            double dot = 0.0;
            for (std::size_t c = 0; c < d; ++c) dot += (xi[c] - x0[c]) * hull.basis[b][c];
            hull.coords[i * hull.dim + b] = dot;
        }
    }
    return hull;
}

class PowerObjective {
public:
    PowerObjective(const HullCoordinates& hull, std::span<const double> weights, PExponent p)
        : hull_(hull), weights_(weights), p_(p) {}

    // Objective value at y; writes a subgradient into `grad`.
    double evaluate(std::span<const double> y, std::span<double> grad) const {
        const std::size_t k = hull_.dim;
        const std::size_t n = weights_.size();
        double best = -1.0;
        std::size_t arg = 0;
        double arg_r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::span<const double> xi(hull_.coords.data() + i * k, k);
            const double r = distance(y, xi);
            const double v = power_combine(r, weights_[i], p_);
            if (v > best) {
                best = v;
                arg = i;
                arg_r = r;
            }
        }
        std::fill(grad.begin(), grad.end(), 0.0);
        if (arg_r > 0.0 && best > 0.0) {
            const double q = p_.value();
            const double slope = q == 1.0 ? 1.0 : std::pow(arg_r / best, q - 1.0);
            const double* xi = hull_.coords.data() + arg * k;
            for (std::size_t c = 0; c < k; ++c) grad[c] = slope * (y[c] - xi[c]) / arg_r;
        }
        return best;
    }

private:
    const HullCoordinates& hull_;
    std::span<const double> weights_;
    PExponent p_;
};

std::vector<double> lift(const HullCoordinates& hull, std::span<const double> y) {
    std::vector<double> out = hull.origin;
    for (std::size_t b = 0; b < hull.dim; ++b) {
        for (std::size_t c = 0; c < out.size(); ++c) out[c] += y[b] * hull.basis[b][c];
    }
    return out;
}

}  // namespace

MinimaxResult solve_power_minimax(const PointCloud& points, std::span<const double> weights, PExponent p,
                                  const MinimaxOptions& options) {
    if (points.empty()) throw ParameterError("minimax over an empty point set");
    if (weights.size() != points.size()) throw ParameterError("one weight per point is required");
    if (p.is_infinite()) throw ParameterError("solve_power_minimax handles finite p only");
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ParameterError("weights must be nonnegative and finite");
    }

    const double max_weight = *std::max_element(weights.begin(), weights.end());
    const HullCoordinates hull = affine_hull(points);
    const std::size_t k = hull.dim;
    const PowerObjective objective(hull, weights, p);

    MinimaxResult result;
    std::vector<double> y(k, 0.0);
    std::vector<double> grad(k, 0.0);

    if (k == 0) {
        // All points coincide; y = x_0 is optimal.
        result.value = objective.evaluate(y, grad);
        result.lower = result.value;
        result.argmin = hull.origin;
        return result;
    }

    double upper = std::numeric_limits<double>::infinity();
    double lower = max_weight;
    std::vector<double> best_y = y;

    auto finish = [&](std::size_t iterations) {
        result.value = upper;
        result.lower = std::min(lower, upper);
        result.argmin = lift(hull, best_y);
        result.iterations = iterations;
        return result;
    };

    if (k == 1) {
        double a = std::numeric_limits<double>::infinity();
        double b = -a;
        for (std::size_t i = 0; i < points.size(); ++i) {
            a = std::min(a, hull.coords[i]);
            b = std::max(b, hull.coords[i]);
        }
        for (std::size_t it = 1; it <= options.max_iterations; ++it) {
            y[0] = 0.5 * (a + b);
            const double value = objective.evaluate(y, grad);
            if (value < upper) {
                upper = value;
                best_y = y;
            }
            if (grad[0] == 0.0) {
                lower = value;
                return finish(it);
            }
            lower = std::max(lower, value - std::abs(grad[0]) * 0.5 * (b - a));
            if (upper - lower <= options.tol) return finish(it);
            if (grad[0] > 0.0) {
                b = y[0];
            } else {
                a = y[0];
            }
        }
        throw SolverError("minimax solver did not converge", lower, upper);
    }

    // Central-cut ellipsoid method. The ellipsoid {z : (z-c)' P^{-1} (z-c) <= 1}
    // always contains a minimizer.
    std::vector<double> center(k, 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t c = 0; c < k; ++c) center[c] += hull.coords[i * k + c];
    }
    for (double& c : center) c /= static_cast<double>(points.size());
    double radius_sq = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        radius_sq = std::max(radius_sq, squared_distance(center, std::span<const double>(hull.coords.data() + i * k, k)));
    }
    std::vector<double> shape(k * k, 0.0);
    for (std::size_t c = 0; c < k; ++c) shape[c * k + c] = radius_sq * (1.0 + 1e-6);

    const double kd = static_cast<double>(k);
    const double shrink = kd * kd / (kd * kd - 1.0);
    std::vector<double> pg(k);
    for (std::size_t it = 1; it <= options.max_iterations; ++it) {
        const double value = objective.evaluate(center, grad);
        if (value < upper) {
            upper = value;
            best_y = center;
        }
        bool zero = std::all_of(grad.begin(), grad.end(), [](double g) { return g == 0.0; });
        if (zero) {
            lower = value;
            return finish(it);
        }
        double gpg = 0.0;
        for (std::size_t r = 0; r < k; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < k; ++c) acc += shape[r * k + c] * grad[c];
            pg[r] = acc;
            gpg += grad[r] * acc;
        }
        gpg = std::max(gpg, 0.0);
        const double width = std::sqrt(gpg);
        lower = std::max(lower, value - width);
        if (upper - lower <= options.tol) return finish(it);
        if (width == 0.0) break;
        for (double& v : pg) v /= width;
        for (std::size_t c = 0; c < k; ++c) center[c] -= pg[c] / (kd + 1.0);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < k; ++c) {
                shape[r * k + c] = shrink * (shape[r * k + c] - 2.0 / (kd + 1.0) * pg[r] * pg[c]);
            }
        }
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = r + 1; c < k; ++c) {
                const double avg = 0.5 * (shape[r * k + c] + shape[c * k + r]);
                shape[r * k + c] = avg;
                shape[c * k + r] = avg;
            }
        }
    }
    throw SolverError("minimax solver did not converge", lower, upper);
}

}  // namespace dtmf
