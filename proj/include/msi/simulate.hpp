#pragma once

#include "msi/field_model.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <vector>

namespace msi {

/// Covariance of the normalized fractional Brownian sheet with Hurst pair hp:
/// 2^{-2} prod_i (|t_i|^{2H_i} + |s_i|^{2H_i} - |t_i - s_i|^{2H_i}).
double fbs_cov(Pair t, Pair s, Pair hp);

enum class SfbsMode {
    single,         // one H' pair (hprime1[0], hprime2[0]) everywhere
    per_rectangle,  // H'_{1,n1}, H'_{2,n2} inside scale rectangle (n1, n2)
};

/// 1-based index n of the half-open scale interval [lambda^{n-1}, lambda^n) holding t >= 1.
long scale_interval_index(double t, double lambda);

/// Covariance of a simple fractional Brownian sheet built from `model`.
/// Points in distinct rectangles are uncorrelated in per_rectangle mode.
double sfbs_cov(Pair t, Pair s, const MsiModel& model, SfbsMode mode);

class CovarianceKernel {
public:
    enum class Kind { fbs, sfbs_single, sfbs_per_rectangle, custom };
    using Function = std::function<double(Pair, Pair)>;

    static CovarianceKernel fbs(Pair hprime);
    static CovarianceKernel sfbs(const MsiModel& model, SfbsMode mode);
    static CovarianceKernel custom(Function f);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double operator()(Pair t, Pair s) const { return f_(t, s); }

    /// Dense covariance matrix over the given points.
    [[nodiscard]] Eigen::MatrixXd matrix(const std::vector<Pair>& points) const;

private:
    CovarianceKernel(Kind kind, Function f) : kind_(kind), f_(std::move(f)) {}

    Kind kind_;
    Function f_;
};

struct SimulationPlan {
    std::vector<Pair> points;
    std::uint64_t seed = 0;
    double jitter = 1e-10;

    /// Row-major rows x cols lattice origin + (r*step[0], c*step[1]).
    static SimulationPlan grid(Eigen::Index rows, Eigen::Index cols, Pair origin, Pair step, std::uint64_t seed);
};

/// Lower Cholesky factor of cov + jitter*I, escalating the jitter by decades up to
/// 1e-6 (relative to the mean diagonal) until the factorization succeeds.
Eigen::MatrixXd factor_covariance(const Eigen::MatrixXd& cov, double jitter);

/// One exact sample of the centred Gaussian field at plan.points (same order).
std::vector<double> simulate_gaussian(const CovarianceKernel& kernel, const SimulationPlan& plan);

/// Many replicates sharing one factorization; column k is replicate k.
Eigen::MatrixXd simulate_replicates(const CovarianceKernel& kernel, const SimulationPlan& plan, int replicates);

/// Sample on a rows x cols lattice, returned as a matrix (entries are signed).
Eigen::MatrixXd simulate_grid(const CovarianceKernel& kernel, Eigen::Index rows, Eigen::Index cols, Pair origin,
                              Pair step, std::uint64_t seed, double jitter = 1e-10);

}  // namespace msi
