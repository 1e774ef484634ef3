#include "doctest.h"
#include "support.hpp"

#include "msi/markov.hpp"

#include <cmath>

using namespace msi;

namespace {

// Largest relative deviation between axis_cov and the chain oracle over 3 periods.
double worst_chain_error(const AxisStats& s) {
    const auto table = extend(s, 3);
    const Eigen::MatrixXd c = chain_covariance(table.var, table.cov1);
    double worst = 0.0;
    for (long a = 0; a < c.rows(); ++a) {
        for (long b = 0; b < c.rows(); ++b) {
            const double got = axis_cov(s, a, b - a);
            worst = std::max(worst, std::abs(got - c(b, a)) / std::max(std::abs(c(b, a)), 1e-12 * c(a, a)));
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("h factor base cases") {
    const AxisStats s(2, {1.0, 2.0}, {0.5, 1.6}, 0.5, 2.0);
    CHECK(h_factor(s, -1) == 1.0);
    CHECK(h_factor(s, 0) == doctest::Approx(0.5));
    CHECK(thrown_code([&] { h_factor(s, -2); }) == ErrorCode::NegativeIndex);
}

TEST_CASE("h factor over several periods matches the expanded product") {
    // ratios 0.5, 0.8
    const AxisStats s(2, {1.0, 2.0}, {0.5, 1.6}, 0.5, 2.0);
    CHECK(h_factor(s, 5) == doctest::Approx(0.064).epsilon(1e-14));
    for (long r = 0; r < 9; ++r) {
        double brute = 1.0;
        for (long j = 0; j <= r; ++j) brute *= (j % 2 == 0) ? 0.5 : 0.8;
        CHECK(h_factor(s, r) == doctest::Approx(brute).epsilon(1e-14));
    }
}

TEST_CASE("zero lag returns the extended variance") {
    const AxisStats a(2, {1.0, 2.0}, {0.5, 1.6}, 0.5, 2.0);
    const AxisStats b(3, {1.5, 1.0, 2.0}, {0.2, -0.3, 0.9}, 0.8, 3.0);
    const FirstScaleStats st{a, b};
    for (IndexPair n : {IndexPair{0, 0}, IndexPair{3, 4}, IndexPair{5, 7}}) {
        CHECK(mmsi_cov(st, n, {0, 0}) == doctest::Approx(a.variance(n[0]) * b.variance(n[1])).epsilon(1e-14));
    }
    CHECK(a.variance(3) == doctest::Approx(std::pow(2.0, 2.0 * 2 * 0.5) * 2.0));
}

TEST_CASE("closed form equals the Gaussian chain covariance") {
    for (int period : {1, 2, 3}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            CHECK(worst_chain_error(random_axis_stats(seed, period, 0.5, 2.0)) <= 1e-10);
            CHECK(worst_chain_error(random_axis_stats(seed + 100, period, 1.3, 1.5)) <= 1e-10);
        }
    }
}

TEST_CASE("negative lag of a whole period") {
    const AxisStats s = random_axis_stats(3, 2, 0.5, 2.0);
    for (long n = 0; n < 4; ++n) {
        CHECK(axis_cov(s, n, -2) == doctest::Approx(std::pow(2.0, -2.0 * 2 * 0.5) * axis_cov(s, n, 2)).epsilon(1e-13));
    }
}

TEST_CASE("separable product matches a non-factored evaluation") {
    const AxisStats a = random_axis_stats(1, 2, 0.5, 2.0);
    const AxisStats b = random_axis_stats(2, 3, 0.7, 1.8);
    const FirstScaleStats st{a, b};
    const Eigen::MatrixXd ca = chain_covariance(extend(a, 3).var, extend(a, 3).cov1);
    const Eigen::MatrixXd cb = chain_covariance(extend(b, 3).var, extend(b, 3).cov1);
    // Joint covariance of the separable field as a Kronecker product.
    Eigen::MatrixXd joint(ca.rows() * cb.rows(), ca.rows() * cb.rows());
    for (long i = 0; i < ca.rows(); ++i)
        for (long j = 0; j < ca.rows(); ++j) joint.block(i * cb.rows(), j * cb.rows(), cb.rows(), cb.rows()) = ca(i, j) * cb;
    for (long n1 = 0; n1 < 6; ++n1)
        for (long n2 = 0; n2 < 9; ++n2)
            for (long m1 : {0L, 3L, 5L})
                for (long m2 : {0L, 4L, 8L}) {
                    const double want = joint(m1 * cb.rows() + m2, n1 * cb.rows() + n2);
                    CHECK(std::abs(mmsi_cov(st, {n1, n2}, {m1 - n1, m2 - n2}) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
                }
}

TEST_CASE("covariance scales by alpha^{2TH} under a period shift") {
    const AxisStats a = random_axis_stats(4, 2, 0.6, 2.0);
    const AxisStats b = random_axis_stats(5, 3, 1.1, 1.5);
    const FirstScaleStats st{a, b};
    for (long n1 = 0; n1 < 4; ++n1)
        for (long n2 = 0; n2 < 4; ++n2)
            for (long l1 = -3; l1 <= 3; ++l1)
                for (long l2 = -3; l2 <= 3; ++l2) {
                    if (n1 + l1 < 0 || n2 + l2 < 0) continue;
                    const double base = mmsi_cov(st, {n1, n2}, {l1, l2});
                    const double shifted = mmsi_cov(st, {n1 + 2, n2 + 3}, {l1, l2});
                    CHECK(std::abs(shifted - a.period_growth() * b.period_growth() * base) <= 1e-12 * std::max(std::abs(shifted), 1e-300));
                }
}

TEST_CASE("cross covariance") {
    const AxisStats a = random_axis_stats(6, 2, 0.5, 2.0);
    const AxisStats b = random_axis_stats(7, 3, 0.9, 1.7);
    const FirstScaleStats st{a, b};
    CHECK(cross_cov(st, {1, 2}, {1, 2}, {0, 0}, {0, 0}) == doctest::Approx(mmsi_cov(st, {1, 2}, {0, 0})).epsilon(1e-14));
    for (IndexPair k : {IndexPair{0, 0}, IndexPair{1, 2}})
        for (IndexPair j : {IndexPair{1, 0}, IndexPair{0, 2}})
            for (IndexPair n : {IndexPair{0, 0}, IndexPair{2, 1}})
                for (IndexPair tau : {IndexPair{0, 0}, IndexPair{1, 2}, IndexPair{-1, 1}}) {
                    const double growth = std::pow(a.period_growth(), n[0]) * std::pow(b.period_growth(), n[1]);
                    const IndexPair lag{tau[0] * 2 + j[0] - k[0], tau[1] * 3 + j[1] - k[1]};
                    const double want = growth * mmsi_cov(st, k, lag);
                    CHECK(std::abs(cross_cov(st, k, j, n, tau) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
                }
    const FirstScaleStats flat{random_axis_stats(8, 2, 0.0, 2.0), random_axis_stats(9, 3, 0.0, 1.7)};
    CHECK(cross_cov(flat, {0, 1}, {1, 1}, {4, 5}, {0, 0}) == doctest::Approx(cross_cov(flat, {0, 1}, {1, 1}, {0, 0}, {0, 0})));
    CHECK(thrown_code([&] { cross_cov(st, {2, 0}, {0, 0}, {0, 0}, {0, 0}); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("ratio periodicity of extended tables") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const int period = 1 + static_cast<int>(seed % 3);
        CHECK(check_ratio_periodicity(extend(random_axis_stats(seed, period, 0.4 + 0.01 * seed, 1.5), 4)));
    }
    auto corrupted = extend(random_axis_stats(1, 2, 0.5, 2.0), 3);
    corrupted.cov1[3] *= 1.1;
    CHECK_FALSE(check_ratio_periodicity(corrupted));
}

TEST_CASE("invalid statistics") {
    CHECK(thrown_code([] { AxisStats(2, {1.0, 0.0}, {0.1, 0.1}, 0.5, 2.0); }) == ErrorCode::ZeroVariance);
    CHECK(thrown_code([] { AxisStats(2, {1.0}, {0.1}, 0.5, 2.0); }) == ErrorCode::LengthMismatch);
    CHECK(thrown_code([] { AxisStats(1, {1.0}, {5.0}, 0.5, 2.0); }) == ErrorCode::InvalidArgument);
    const AxisStats s(1, {1.0}, {0.5}, 0.5, 2.0);
    CHECK(thrown_code([&] { axis_cov(s, -1, 0); }) == ErrorCode::NegativeIndex);
}
