#pragma once

#include "msi/error.hpp"

#include <cmath>
#include <optional>

// Code of the msi::Error thrown by f, or nullopt when f returns normally.
template <class F>
std::optional<msi::ErrorCode> thrown_code(F&& f) {
    try {
        f();
    } catch (const msi::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

#include "msi/lamperti.hpp"

#include <random>

// Seeded lattice function on [lo, lo+size)^2 with values in [-1, 1].
inline msi::LatticeFunction random_lattice(std::uint64_t seed, msi::Pair base, long size, long lo = -2) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    msi::LatticeFunction f(base);
    for (long i = lo; i < lo + size; ++i) {
        for (long j = lo; j < lo + size; ++j) f.set({i, j}, u(rng));
    }
    return f;
}

#include "msi/simulate.hpp"

// Largest |empirical - exact| / standard error over all covariance entries of a
// zero-mean sample with replicates in columns. SE^2 = (s_ii s_jj + s_ij^2) / N.
inline double max_covariance_z(const Eigen::MatrixXd& samples, const Eigen::MatrixXd& exact) {
    const double n = static_cast<double>(samples.cols());
    const Eigen::MatrixXd emp = samples * samples.transpose() / n;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < exact.rows(); ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double se = std::sqrt((exact(i, i) * exact(j, j) + exact(i, j) * exact(i, j)) / n);
            worst = std::max(worst, std::abs(emp(i, j) - exact(i, j)) / se);
        }
    }
    return worst;
}

#include "msi/spectral.hpp"

// Covariance table with independent uniform entries over every (n, tau).
inline msi::PcCovarianceTable random_pc_table(std::uint64_t seed, msi::PeriodLattice u, msi::LagWindow w) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    msi::PcCovarianceTable q(u, w);
    for (auto tau : w.lags())
        for (auto n : u.indices()) q.at(n, tau) = dist(rng);
    return q;
}

#include "msi/markov.hpp"

// Covariance matrix of the Gaussian chain X_0..X_{N-1} with the given variances and
// one-step covariances, built from the innovation form
// X_{n+1} = (c_n / v_n) X_n + sqrt(v_{n+1} - c_n^2 / v_n) e_{n+1}.
inline Eigen::MatrixXd chain_covariance(const std::vector<double>& var, const std::vector<double>& cov1) {
    const auto n = static_cast<Eigen::Index>(var.size());
    Eigen::MatrixXd loadings = Eigen::MatrixXd::Zero(n, n);
    loadings(0, 0) = std::sqrt(var[0]);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double a = cov1[static_cast<std::size_t>(i)] / var[static_cast<std::size_t>(i)];
        const double innovation = var[static_cast<std::size_t>(i + 1)] - a * cov1[static_cast<std::size_t>(i)];
        loadings.row(i + 1) = a * loadings.row(i);
        loadings(i + 1, i + 1) = std::sqrt(std::max(innovation, 0.0));
    }
    return loadings * loadings.transpose();
}

// Seeded first-interval statistics with correlations drawn in (-0.9, 0.9).
inline msi::AxisStats random_axis_stats(std::uint64_t seed, int period, double hurst, double alpha) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> v(0.5, 3.0), rho(-0.9, 0.9);
    std::vector<double> var(static_cast<std::size_t>(period));
    for (auto& x : var) x = v(rng);
    const double growth = std::pow(alpha, 2.0 * period * hurst);
    std::vector<double> cov1(static_cast<std::size_t>(period));
    for (int j = 0; j < period; ++j) {
        const double next = j + 1 < period ? var[static_cast<std::size_t>(j + 1)] : growth * var[0];
        cov1[static_cast<std::size_t>(j)] = rho(rng) * std::sqrt(var[static_cast<std::size_t>(j)] * next);
    }
    return msi::AxisStats(period, var, cov1, hurst, alpha);
}
