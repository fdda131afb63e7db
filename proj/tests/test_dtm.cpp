#include <doctest.h>

#include <cmath>

#include "dtmfilt/dtm.hpp"
#include "dtmfilt/errors.hpp"
#include "dtmfilt/metrics.hpp"
#include "oracles.hpp"

using namespace dtmf;

namespace {

DiscreteMeasure line_measure(std::vector<double> xs, std::vector<double> masses) {
    std::vector<std::vector<double>> rows;
    for (double x : xs) rows.push_back({x});
    return DiscreteMeasure(PointCloud::from_rows(rows), std::move(masses));
}

DiscreteMeasure uniform_line(std::vector<double> xs) {
    return line_measure(xs, std::vector<double>(xs.size(), 1.0));
}

PointCloud random_cloud(Rng& rng, std::size_t n, std::size_t d, double scale = 1.0) {
    std::vector<double> coords(n * d);
    for (double& c : coords) c = rng.uniform(-scale, scale);
    return PointCloud(d, coords);
}

}  // namespace

TEST_SUITE("dtm") {

TEST_CASE("mass parameter") {
    CHECK(DtmParams(0.1).m() == 0.1);
    CHECK(DtmParams::parse("3/40").m() == 3.0 / 40.0);
    CHECK(DtmParams::parse("0.25").m() == 0.25);
    CHECK_THROWS_AS(DtmParams(0.0), ParameterError);
    CHECK_THROWS_AS(DtmParams(1.0), ParameterError);
    CHECK_THROWS_AS(DtmParams::parse("1/0"), ParameterError);
    CHECK_THROWS_AS(DtmParams::parse("abc"), ParameterError);
}

TEST_CASE("dtm values") {
    const double q05[] = {0.5};
    CHECK(dtm(uniform_line({0, 1, 2}), q05, DtmParams(1.0 / 3.0)) == doctest::Approx(0.5).epsilon(1e-14));

    const double qm1[] = {-1.0};
    const double expected = 2.0 * std::sqrt((0.3 - 0.2) / 0.3);
    CHECK(dtm(line_measure({-1, 1}, {0.2, 0.8}), qm1, DtmParams(0.3)) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(1.154701).epsilon(1e-6));

    const double q0[] = {0.0};
    CHECK(dtm(uniform_line({-1, 1}), q0, DtmParams(0.5)) == doctest::Approx(1.0).epsilon(1e-14));

    const double q2d[] = {0.0, 0.0};
    CHECK_THROWS_AS(dtm(uniform_line({0}), q2d, DtmParams(0.5)), DimensionError);
}

TEST_CASE("dtm weights") {
    CHECK(dtm_weights(PointCloud::from_rows({{0}}), DtmParams(0.3))[0] == 0.0);
    const auto half = dtm_weights(PointCloud::from_rows({{0}, {1}}), DtmParams(0.5));
    CHECK(half[0] == 0.0);
    CHECK(half[1] == 0.0);
    const auto three_quarters = dtm_weights(PointCloud::from_rows({{0}, {1}}), DtmParams(0.75));
    CHECK(three_quarters[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(three_quarters[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("c(mu, m)") {
    CHECK(c_const(uniform_line({0}), DtmParams(0.5)) == 0.0);
    CHECK(c_const(uniform_line({-1, 1}), DtmParams(0.5)) == 0.0);
    CHECK(c_const(uniform_line({-1, 1}), DtmParams(0.75)) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("simplex filtration value") {
    const double c[] = {0.7};
    CHECK(simplex_filtration_value(PointCloud::from_rows({{3, 4}}), c, PExponent(2.0)) == 0.7);
    const PointCloud pair = PointCloud::from_rows({{-1}, {1}});
    const double zero[] = {0.0, 0.0};
    CHECK(simplex_filtration_value(pair, zero, PExponent(1.0)) == doctest::Approx(1.0).epsilon(1e-6));
    const double tilted[] = {1.0, 0.0};
    CHECK(std::abs(simplex_filtration_value(pair, tilted, PExponent(1.0)) - 1.5) <= 1e-6);
    CHECK(simplex_filtration_value(pair, tilted, PExponent::infinity()) == 1.0);

    const PointCloud tri = PointCloud::from_rows({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
    const double w0[] = {0, 0, 0};
    CHECK(std::abs(simplex_filtration_value(tri, w0, PExponent(2.0)) - 1.0 / std::sqrt(3.0)) <= 1e-6);
    CHECK(std::abs(simplex_filtration_value(tri, w0, PExponent::infinity()) - 1.0 / std::sqrt(3.0)) <= 1e-12);
}

TEST_CASE("c(mu, m, p)") {
    const auto mu = line_measure({-1, 0.3, 1, 2}, {0.1, 0.4, 0.2, 0.3});
    CHECK(c_const_p(mu, DtmParams(0.35), PExponent(1.0)) == c_const(mu, DtmParams(0.35)));
    CHECK(c_const_p(uniform_line({0}), DtmParams(0.5), PExponent(3.0)) == 0.0);
    CHECK(c_const_p(uniform_line({0}), DtmParams(0.5), PExponent::infinity()) == 0.0);
    CHECK(std::abs(c_const_p(uniform_line({-1, 1}), DtmParams(0.5), PExponent(2.0)) - 0.5) <= 1e-6);
}

TEST_CASE("support filtration value lies between half and twice the diameter") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng.below(8);
        const PointCloud gamma = random_cloud(rng, n, 2);
        const auto mu = DiscreteMeasure::uniform(gamma);
        const DtmParams params(static_cast<double>(1 + rng.below(n - 1)) / static_cast<double>(n));
        for (PExponent p : {PExponent(1.0), PExponent(2.0), PExponent(3.5), PExponent::infinity()}) {
            const double t = support_filtration_value(mu, params, p);
            CHECK(t >= diameter(gamma) / 2.0 - 1e-6);
            CHECK(t <= 2.0 * diameter(gamma) + 1e-6);
        }
    }
}

TEST_CASE("k-NN formula agrees for m = k/n") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3 + rng.below(20);
        const PointCloud cloud = random_cloud(rng, n, 3);
        const std::size_t k = 1 + rng.below(n - 1);
        const DtmParams params(static_cast<double>(k) / static_cast<double>(n));
        const auto mu = DiscreteMeasure::uniform(cloud);
        for (int q = 0; q < 5; ++q) {
            const PointCloud query = random_cloud(rng, 1, 3, 2.0);
            CHECK(std::abs(dtm(mu, query.point(0), params) - oracle::knn_dtm(cloud, query.point(0), k)) <= 1e-12);
        }
    }
}

TEST_CASE("1-Lipschitz and bounded below by the distance to the support") {
    Rng rng(5);
    const auto mu = line_measure({-1, 0, 0.5, 2}, {0.1, 0.2, 0.3, 0.4});
    for (int trial = 0; trial < 1000; ++trial) {
        const DtmParams params(rng.uniform(0.01, 0.99));
        const double y[] = {rng.uniform(-3, 3)};
        const double z[] = {rng.uniform(-3, 3)};
        CHECK(std::abs(dtm(mu, y, params) - dtm(mu, z, params)) <= std::abs(y[0] - z[0]) + 1e-9);
        double nearest = INFINITY;
        for (double s : {-1.0, 0.0, 0.5, 2.0}) nearest = std::min(nearest, std::abs(y[0] - s));
        CHECK(dtm(mu, y, params) >= nearest - 1e-12);
    }
}

TEST_CASE("Wasserstein stability on small measures") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto mu = DiscreteMeasure::uniform(random_cloud(rng, 2 + rng.below(4), 2));
        const auto nu = DiscreteMeasure::uniform(random_cloud(rng, 2 + rng.below(4), 2));
        const DtmParams params(rng.uniform(0.05, 0.95));
        const double bound = wasserstein2(mu, nu) / std::sqrt(params.m()) + 1e-9;
        for (int g = 0; g < 25; ++g) {
            const double y[] = {-2.0 + 4.0 * (g % 5) / 4.0, -2.0 + 4.0 * (g / 5) / 4.0};
            CHECK(std::abs(dtm(mu, y, params) - dtm(nu, y, params)) <= bound);
        }
    }
}

TEST_CASE("appendix inequality: 2^(1-1/p) - 1 <= 1 - 1/p") {
    Rng rng(23);
    for (int trial = 0; trial < 10000; ++trial) {
        const double p = trial == 0 ? 1.0 : 1.0 + rng.uniform() * 50.0;
        CHECK(std::pow(2.0, 1.0 - 1.0 / p) - 1.0 <= 1.0 - 1.0 / p + 1e-9);
    }
}

TEST_CASE("appendix inequality: right trapezoid") {
    Rng rng(29);
    for (int trial = 0; trial < 10000; ++trial) {
        double g[3], x[3], a[3], u[3];
        for (int k = 0; k < 3; ++k) {
            g[k] = rng.uniform(-2, 2);
            x[k] = rng.uniform(-2, 2);
            a[k] = rng.uniform(-2, 2);
            u[k] = rng.uniform(-1, 1);
        }
        const double un = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
        if (un < 1e-3) continue;
        for (double& c : u) c /= un;
        auto project = [&](const double* v, double* out) {
            const double s = (v[0] - a[0]) * u[0] + (v[1] - a[1]) * u[1] + (v[2] - a[2]) * u[2];
            for (int k = 0; k < 3; ++k) out[k] = a[k] + s * u[k];
        };
        double qg[3], qx[3];
        project(g, qg);
        project(x, qx);
        auto norm = [](const double* v, const double* w) {
            return std::sqrt((v[0] - w[0]) * (v[0] - w[0]) + (v[1] - w[1]) * (v[1] - w[1]) + (v[2] - w[2]) * (v[2] - w[2]));
        };
        const double lhs = norm(g, qx) * norm(g, qx);
        const double rhs = norm(x, g) * norm(x, g) + norm(x, qx) * (2.0 * norm(g, qg) - norm(x, qx));
        CHECK(lhs <= rhs + 1e-9);
    }
}

TEST_CASE("appendix inequality: (a^p - d^p)^(2/p) + d(2b - d) <= (a + kappa b)^2") {
    Rng rng(31);
    for (int trial = 0; trial < 10000; ++trial) {
        const double p = 1.0 + rng.uniform() * 20.0;
        const double a = rng.uniform(0, 5);
        const double b = rng.uniform(0, a);
        const double d = rng.uniform(0, a);
        const double kappa = 1.0 - 1.0 / p;
        const double lhs = std::pow(std::max(0.0, std::pow(a, p) - std::pow(d, p)), 2.0 / p) + d * (2.0 * b - d);
        CHECK(lhs <= (a + kappa * b) * (a + kappa * b) + 1e-9);
    }
}

}
