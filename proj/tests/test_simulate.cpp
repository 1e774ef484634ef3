#include "doctest.h"
#include "support.hpp"

#include "msi/simulate.hpp"

#include <cmath>
#include <random>

using namespace msi;

namespace {

MsiModel two_rectangle_model() {
    MsiModel m;
    m.lambda = {2.0, 3.0};
    m.hurst = {1.2, 0.9};
    m.hprime1 = {0.3, 0.6};
    m.hprime2 = {0.7, 0.4};
    m.breakpoints_a = Breakpoints({0, 1, 2});
    m.breakpoints_b = Breakpoints({0, 1, 2});
    return m;
}

// Written out per axis without helpers, as an oracle for the kernel.
double fbs_direct(double t1, double t2, double s1, double s2, double h1, double h2) {
    const double a = std::pow(t1, 2 * h1) + std::pow(s1, 2 * h1) - std::pow(std::abs(t1 - s1), 2 * h1);
    const double b = std::pow(t2, 2 * h2) + std::pow(s2, 2 * h2) - std::pow(std::abs(t2 - s2), 2 * h2);
    return a * b / 4.0;
}

}  // namespace

TEST_CASE("brownian sheet covariance at simple points") {
    CHECK(fbs_cov({1, 1}, {1, 1}, {0.5, 0.5}) == doctest::Approx(1.0));
    CHECK(fbs_cov({1, 1}, {2, 2}, {0.5, 0.5}) == doctest::Approx(1.0));
    CHECK(fbs_cov({1, 2}, {3, 1}, {0.3, 0.7}) == doctest::Approx(fbs_direct(1, 2, 3, 1, 0.3, 0.7)).epsilon(1e-14));
}

TEST_CASE("fbs rejects invalid H' and negative coordinates") {
    CHECK(thrown_code([] { fbs_cov({1, 1}, {1, 1}, {1.0, 0.5}); }) == ErrorCode::InvalidHurstPrime);
    CHECK(thrown_code([] { fbs_cov({-1, 1}, {1, 1}, {0.5, 0.5}); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("fbs covariance is symmetric and self-similar") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.1, 5.0), h(0.05, 0.95);
    for (int k = 0; k < 100; ++k) {
        const Pair t{u(rng), u(rng)}, s{u(rng), u(rng)}, hp{h(rng), h(rng)}, a{u(rng), u(rng)};
        CHECK(fbs_cov(t, s, hp) == fbs_cov(s, t, hp));
        const double scaled = fbs_cov({a[0] * t[0], a[1] * t[1]}, {a[0] * s[0], a[1] * s[1]}, hp);
        const double expect = std::pow(a[0], 2 * hp[0]) * std::pow(a[1], 2 * hp[1]) * fbs_cov(t, s, hp);
        CHECK(std::abs(scaled - expect) <= 1e-12 * std::abs(expect));
    }
}

TEST_CASE("brownian sheet rectangular increments are stationary") {
    const Pair hp{0.5, 0.5};
    // Var of X(v1,v2) - X(u1,v2) - X(v1,u2) + X(u1,u2) from the covariance.
    auto rect_var = [&](Pair lo, Pair hi) {
        const std::array<Pair, 4> pts{hi, Pair{lo[0], hi[1]}, Pair{hi[0], lo[1]}, lo};
        const std::array<double, 4> sign{1, -1, -1, 1};
        double v = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) v += sign[i] * sign[j] * fbs_cov(pts[i], pts[j], hp);
        return v;
    };
    const Pair h{0.7, 1.3};
    const double base = rect_var({0, 0}, h);
    for (Pair u : {Pair{1, 2}, Pair{3.5, 0.25}}) {
        CHECK(std::abs(rect_var(u, {u[0] + h[0], u[1] + h[1]}) - base) <= 1e-12);
    }
    CHECK(base == doctest::Approx(h[0] * h[1]));
}

TEST_CASE("scale interval index is half-open") {
    CHECK(scale_interval_index(1.0, 2.0) == 1);
    CHECK(scale_interval_index(1.999, 2.0) == 1);
    CHECK(scale_interval_index(2.0, 2.0) == 2);
    CHECK(scale_interval_index(8.0, 2.0) == 4);
    CHECK(scale_interval_index(1.224 * 1.224, 1.224) == 3);
    CHECK(thrown_code([] { scale_interval_index(0.5, 2.0); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("sfbs at the unit point carries the first-rectangle prefactor") {
    const MsiModel m = two_rectangle_model();
    const double expect = std::pow(2.0, 2 * (1.2 - 0.3)) * std::pow(3.0, 2 * (0.9 - 0.7)) * fbs_cov({1, 1}, {1, 1}, {0.3, 0.7});
    CHECK(sfbs_cov({1, 1}, {1, 1}, m, SfbsMode::single) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(sfbs_cov({1, 1}, {1, 1}, m, SfbsMode::per_rectangle) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("sfbs single mode scales by lambda^{2H}") {
    const MsiModel m = two_rectangle_model();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(1.0, 20.0);
    for (int k = 0; k < 100; ++k) {
        const Pair t{u(rng), u(rng)}, s{u(rng), u(rng)};
        const double base = sfbs_cov(t, s, m, SfbsMode::single);
        const double scaled = sfbs_cov({2.0 * t[0], 3.0 * t[1]}, {2.0 * s[0], 3.0 * s[1]}, m, SfbsMode::single);
        CHECK(rel_err(scaled, std::pow(2.0, 2 * 1.2) * std::pow(3.0, 2 * 0.9) * base) <= 1e-9);
    }
}

TEST_CASE("sfbs with H' = H collapses to fbs") {
    MsiModel m = two_rectangle_model();
    m.hurst = {0.3, 0.7};
    for (Pair t : {Pair{1.5, 2.5}, Pair{7.0, 1.1}}) {
        CHECK(sfbs_cov(t, {3.3, 4.4}, m, SfbsMode::single) == doctest::Approx(fbs_cov(t, {3.3, 4.4}, {0.3, 0.7})));
    }
}

TEST_CASE("per-rectangle mode: independence across rectangles and domain limit") {
    const MsiModel m = two_rectangle_model();
    CHECK(sfbs_cov({1.5, 1.5}, {2.5, 1.5}, m, SfbsMode::per_rectangle) == 0.0);
    const double inside = sfbs_cov({2.5, 4.0}, {3.5, 5.0}, m, SfbsMode::per_rectangle);
    const double expect = std::pow(2.0, 2 * ((1.2 - 0.3) + (1.2 - 0.6))) * std::pow(3.0, 2 * ((0.9 - 0.7) + (0.9 - 0.4))) *
                          fbs_cov({2.5, 4.0}, {3.5, 5.0}, {0.6, 0.4});
    CHECK(inside == doctest::Approx(expect).epsilon(1e-13));
    CHECK(thrown_code([&] { sfbs_cov({4.5, 1.0}, {1, 1}, m, SfbsMode::per_rectangle); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("sfbs kernel requires a simulatable model") {
    MsiModel m = two_rectangle_model();
    m.hprime2 = {0.7, 1.14};
    CHECK(thrown_code([&] { CovarianceKernel::sfbs(m, SfbsMode::single); }) == ErrorCode::InvalidHurstPrime);
}

TEST_CASE("zero kernel gives the zero sample") {
    const auto zero = CovarianceKernel::custom([](Pair, Pair) { return 0.0; });
    const auto sample = simulate_gaussian(zero, SimulationPlan::grid(3, 3, {1, 1}, {1, 1}, 4));
    for (double v : sample) CHECK(v == 0.0);
}

TEST_CASE("same seed and plan give identical samples") {
    const auto k = CovarianceKernel::fbs({0.3, 0.8});
    const auto a = simulate_grid(k, 5, 4, {1, 1}, {1, 1}, 99);
    const auto b = simulate_grid(k, 5, 4, {1, 1}, {1, 1}, 99);
    CHECK(a == b);
    CHECK(a != simulate_grid(k, 5, 4, {1, 1}, {1, 1}, 100));
}

TEST_CASE("indefinite covariance fails to factor") {
    Eigen::MatrixXd c(2, 2);
    c << 1.0, 2.0, 2.0, 1.0;
    CHECK(thrown_code([&] { factor_covariance(c, 1e-10); }) == ErrorCode::FactorizationFailure);
}

TEST_CASE("duplicate simulation points are rejected") {
    SimulationPlan plan;
    plan.points = {{1, 1}, {1, 1}};
    CHECK(thrown_code([&] { simulate_gaussian(CovarianceKernel::fbs({0.5, 0.5}), plan); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("empirical fbs covariance matches the kernel within three standard errors") {
    const auto kernel = CovarianceKernel::fbs({0.5, 0.5});
    const auto plan = SimulationPlan::grid(4, 4, {1, 1}, {1, 1}, 42);
    const Eigen::MatrixXd samples = simulate_replicates(kernel, plan, 2000);
    CHECK(max_covariance_z(samples, kernel.matrix(plan.points)) < 3.0);
}

TEST_CASE("standardized covariance errors are calibrated across seeds") {
    const auto kernel = CovarianceKernel::fbs({0.3, 0.7});
    double sum = 0.0, sum_sq = 0.0;
    long count = 0, beyond = 0;
    for (std::uint64_t seed = 1000; seed < 1050; ++seed) {
        const auto plan = SimulationPlan::grid(4, 4, {1, 1}, {1, 1}, seed);
        const Eigen::MatrixXd c = kernel.matrix(plan.points);
        const Eigen::MatrixXd s = simulate_replicates(kernel, plan, 2000);
        const Eigen::MatrixXd emp = s * s.transpose() / 2000.0;
        for (Eigen::Index i = 0; i < 16; ++i) {
            for (Eigen::Index j = 0; j <= i; ++j) {
                const double z = (emp(i, j) - c(i, j)) / std::sqrt((c(i, i) * c(j, j) + c(i, j) * c(i, j)) / 2000.0);
                sum += z;
                sum_sq += z * z;
                beyond += std::abs(z) >= 3.0;
                ++count;
            }
        }
    }
    // 6800 correlated z-scores; bounds are loose multiples of their sampling spread.
    CHECK(std::abs(sum / count) < 0.15);
    CHECK(std::abs(sum_sq / count - 1.0) < 0.15);
    CHECK(static_cast<double>(beyond) / count < 0.01);
}
