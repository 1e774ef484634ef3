#pragma once

#include "msi/field_model.hpp"

#include <array>
#include <vector>

namespace msi {

/// First-scale-interval statistics of one axis of a separable Markov MSI field:
/// var[j] = Q_j(0) and cov1[j] = Q_j(1) = Cov(X(alpha^{j+1}), X(alpha^j)) for j < T.
class AxisStats {
public:
    AxisStats(int period, std::vector<double> var, std::vector<double> cov1, double hurst, double alpha);

    [[nodiscard]] int period() const noexcept { return period_; }
    [[nodiscard]] double hurst() const noexcept { return hurst_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] const std::vector<double>& var() const noexcept { return var_; }
    [[nodiscard]] const std::vector<double>& cov1() const noexcept { return cov1_; }

    /// alpha^{2TH}: variance growth across one full scale interval.
    [[nodiscard]] double period_growth() const;
    /// Q_n(0) for any n >= 0 via the scale-invariance extension.
    [[nodiscard]] double variance(long n) const;
    /// Q_n(1) for any n >= 0 via the scale-invariance extension.
    [[nodiscard]] double step_covariance(long n) const;
    /// One-step correlation ratio Q_j(1)/Q_j(0); periodic in j with period T.
    [[nodiscard]] double ratio(long j) const;

private:
    int period_;
    std::vector<double> var_;
    std::vector<double> cov1_;
    double hurst_;
    double alpha_;
};

using FirstScaleStats = std::array<AxisStats, 2>;

/// h(alpha^r) = prod_{j=0}^{r} Q_j(1)/Q_j(0), with h(alpha^{-1}) = 1.
double h_factor(const AxisStats& stats, long r);

/// Axis covariance Q^H_n(lag) = Cov(X(alpha^{n+lag}), X(alpha^n)), n >= 0, any integer lag.
double axis_cov(const AxisStats& stats, long n, long lag);

/// Separable field covariance Q^H_n(tau) = Q_{1,n1}(tau1) Q_{2,n2}(tau2).
double mmsi_cov(const FirstScaleStats& stats, IndexPair n, IndexPair lag);

/// Cross-covariance of the T1T2-variate self-similar field Y_k(n) = X(alpha^{nT+k}):
/// alpha^{2nTH} [h(alpha^{T-1})]^tau h(alpha^{j-1}) [h(alpha^{k-1})]^{-1} Q^H_k(0).
double cross_cov(const FirstScaleStats& stats, IndexPair k, IndexPair j, IndexPair n, IndexPair tau);

/// Q_j(0) and Q_j(1) listed over several periods.
struct ExtendedAxisTable {
    int period = 1;
    std::vector<double> var;
    std::vector<double> cov1;
};

ExtendedAxisTable extend(const AxisStats& stats, int periods);

/// True iff Q_j(1)/Q_j(0) = Q_{j+T}(1)/Q_{j+T}(0) for every listed j (1e-10 relative).
bool check_ratio_periodicity(const ExtendedAxisTable& table);

}  // namespace msi
