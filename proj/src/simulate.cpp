#include "msi/simulate.hpp"

#include "msi/error.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <random>
#include <set>
#include <string>

namespace msi {
namespace {

void require_hprime(Pair hp) {
    for (double h : hp) {
        if (!(h > 0.0 && h < 1.0)) fail(ErrorCode::InvalidHurstPrime, "fBs requires H' in (0,1), got " + std::to_string(h));
    }
}

double fbs_cov_unchecked(Pair t, Pair s, Pair hp) {
    double prod = 0.25;
    for (int i = 0; i < 2; ++i) {
        const double e = 2.0 * hp[i];
        prod *= std::pow(std::abs(t[i]), e) + std::pow(std::abs(s[i]), e) - std::pow(std::abs(t[i] - s[i]), e);
    }
    return prod;
}

}  // namespace

double fbs_cov(Pair t, Pair s, Pair hp) {
    require_hprime(hp);
    if (t[0] < 0.0 || t[1] < 0.0 || s[0] < 0.0 || s[1] < 0.0) {
        fail(ErrorCode::OutOfDomain, "fBs is indexed by the positive quadrant");
    }
    return fbs_cov_unchecked(t, s, hp);
}

long scale_interval_index(double t, double lambda) {
    if (!(t >= 1.0) || !std::isfinite(t)) fail(ErrorCode::OutOfDomain, "sfBs points must satisfy t >= 1");
    if (!(lambda > 1.0)) fail(ErrorCode::InvalidScale, "lambda must exceed 1");
    long n = static_cast<long>(std::floor(std::log(t) / std::log(lambda))) + 1;
    // Correct the floating-point rounding at exact powers so the intervals stay half-open.
    while (n > 1 && std::pow(lambda, static_cast<double>(n - 1)) > t) --n;
    while (std::pow(lambda, static_cast<double>(n)) <= t) ++n;
    return n;
}

double sfbs_cov(Pair t, Pair s, const MsiModel& model, SfbsMode mode) {
    if (!model.simulatable()) fail(ErrorCode::InvalidHurstPrime, "model is not simulatable");
    const std::array<const std::vector<double>*, 2> hprime{&model.hprime1, &model.hprime2};
    const std::array<long, 2> nt{scale_interval_index(t[0], model.lambda[0]),
                                 scale_interval_index(t[1], model.lambda[1])};
    const std::array<long, 2> ns{scale_interval_index(s[0], model.lambda[0]),
                                 scale_interval_index(s[1], model.lambda[1])};

    if (mode == SfbsMode::single) {
        const Pair hp{model.hprime1.front(), model.hprime2.front()};
        double pre = 1.0;
        for (int i = 0; i < 2; ++i) {
            const double d = model.hurst[i] - hp[i];
            pre *= std::pow(model.lambda[i], static_cast<double>(nt[i] + ns[i]) * d);
        }
        return pre * fbs_cov_unchecked(t, s, hp);
    }

    for (int i = 0; i < 2; ++i) {
        const auto count = static_cast<long>(hprime[i]->size());
        if (nt[i] > count || ns[i] > count) {
            fail(ErrorCode::OutOfDomain, "point lies beyond the modelled scale rectangles");
        }
    }
    if (nt != ns) return 0.0;

    Pair hp{};
    double pre = 1.0;
    for (int i = 0; i < 2; ++i) {
        const auto& h = *hprime[i];
        hp[i] = h[static_cast<std::size_t>(nt[i] - 1)];
        double exponent = 0.0;
        for (long k = 0; k < nt[i]; ++k) exponent += model.hurst[i] - h[static_cast<std::size_t>(k)];
        pre *= std::pow(model.lambda[i], 2.0 * exponent);
    }
    return pre * fbs_cov_unchecked(t, s, hp);
}

CovarianceKernel CovarianceKernel::fbs(Pair hprime) {
    require_hprime(hprime);
    return {Kind::fbs, [hprime](Pair t, Pair s) { return fbs_cov(t, s, hprime); }};
}

CovarianceKernel CovarianceKernel::sfbs(const MsiModel& model, SfbsMode mode) {
    validate_model(model, ModelUse::simulation);
    const Kind kind = mode == SfbsMode::single ? Kind::sfbs_single : Kind::sfbs_per_rectangle;
    return {kind, [model, mode](Pair t, Pair s) { return sfbs_cov(t, s, model, mode); }};
}

CovarianceKernel CovarianceKernel::custom(Function f) { return {Kind::custom, std::move(f)}; }

Eigen::MatrixXd CovarianceKernel::matrix(const std::vector<Pair>& points) const {
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = f_(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
            cov(i, j) = v;
            cov(j, i) = v;
        }
    }
    return cov;
}

SimulationPlan SimulationPlan::grid(Eigen::Index rows, Eigen::Index cols, Pair origin, Pair step, std::uint64_t seed) {
    if (rows < 1 || cols < 1) fail(ErrorCode::InvalidArgument, "grid dimensions must be positive");
    SimulationPlan plan;
    plan.seed = seed;
    plan.points.reserve(static_cast<std::size_t>(rows * cols));
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            plan.points.push_back({origin[0] + static_cast<double>(r) * step[0],
                                   origin[1] + static_cast<double>(c) * step[1]});
        }
    }
    return plan;
}

Eigen::MatrixXd factor_covariance(const Eigen::MatrixXd& cov, double jitter) {
    const Eigen::Index n = cov.rows();
    if (n != cov.cols()) fail(ErrorCode::InvalidArgument, "covariance must be square");
    if (!(jitter >= 0.0)) fail(ErrorCode::InvalidArgument, "jitter must be non-negative");
    const double scale = n > 0 ? cov.diagonal().cwiseAbs().mean() : 0.0;
    if (scale == 0.0) {
        if (cov.cwiseAbs().maxCoeff() != 0.0) fail(ErrorCode::FactorizationFailure, "zero diagonal with nonzero covariance");
        return Eigen::MatrixXd::Zero(n, n);
    }
    constexpr double kMaxJitter = 1e-6 * (1.0 + 1e-9);
    for (double j = jitter; j <= kMaxJitter; j = (j == 0.0 ? 1e-10 : j * 10.0)) {
        Eigen::MatrixXd shifted = cov;
        shifted.diagonal().array() += j * scale;
        Eigen::LLT<Eigen::MatrixXd> llt(shifted);
        if (llt.info() == Eigen::Success) return llt.matrixL();
    }
    fail(ErrorCode::FactorizationFailure, "covariance is not positive semidefinite within the jitter budget");
}

Eigen::MatrixXd simulate_replicates(const CovarianceKernel& kernel, const SimulationPlan& plan, int replicates) {
    if (replicates < 1) fail(ErrorCode::InvalidArgument, "need at least one replicate");
    std::set<Pair> distinct(plan.points.begin(), plan.points.end());
    if (distinct.size() != plan.points.size()) fail(ErrorCode::InvalidArgument, "simulation points must be distinct");

    const Eigen::MatrixXd lower = factor_covariance(kernel.matrix(plan.points), plan.jitter);
    std::mt19937_64 rng(plan.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd z(lower.rows(), replicates);
    for (int k = 0; k < replicates; ++k) {
        for (Eigen::Index i = 0; i < z.rows(); ++i) z(i, k) = normal(rng);
    }
    return lower.triangularView<Eigen::Lower>() * z;
}

std::vector<double> simulate_gaussian(const CovarianceKernel& kernel, const SimulationPlan& plan) {
    const Eigen::MatrixXd sample = simulate_replicates(kernel, plan, 1);
    return {sample.data(), sample.data() + sample.size()};
}

Eigen::MatrixXd simulate_grid(const CovarianceKernel& kernel, Eigen::Index rows, Eigen::Index cols, Pair origin,
                              Pair step, std::uint64_t seed, double jitter) {
    SimulationPlan plan = SimulationPlan::grid(rows, cols, origin, step, seed);
    plan.jitter = jitter;
    const std::vector<double> sample = simulate_gaussian(kernel, plan);
    Eigen::MatrixXd out(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) out(r, c) = sample[static_cast<std::size_t>(r * cols + c)];
    }
    return out;
}

}  // namespace msi
