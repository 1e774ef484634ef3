#include "msi/markov.hpp"

#include "msi/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace msi {
namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

AxisStats::AxisStats(int period, std::vector<double> var, std::vector<double> cov1, double hurst, double alpha)
    : period_(period), var_(std::move(var)), cov1_(std::move(cov1)), hurst_(hurst), alpha_(alpha) {
    if (period_ < 1) fail(ErrorCode::InvalidArgument, "period must be >= 1");
    if (var_.size() != static_cast<std::size_t>(period_) || cov1_.size() != static_cast<std::size_t>(period_)) {
        fail(ErrorCode::LengthMismatch, "var and cov1 must hold one entry per period position");
    }
    if (!(alpha_ > 1.0) || !std::isfinite(alpha_)) fail(ErrorCode::InvalidScale, "alpha must exceed 1");
    if (!std::isfinite(hurst_)) fail(ErrorCode::NonFinite, "Hurst exponent");
    for (double v : var_) {
        if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorCode::ZeroVariance, "variances must be positive");
    }
    for (int j = 0; j < period_; ++j) {
        const double next = variance(j + 1);
        const double bound = std::sqrt(var_[static_cast<std::size_t>(j)] * next);
        if (!std::isfinite(cov1_[static_cast<std::size_t>(j)]) ||
            std::abs(cov1_[static_cast<std::size_t>(j)]) > bound * (1.0 + 1e-12)) {
            fail(ErrorCode::InvalidArgument, "one-step covariance violates Cauchy-Schwarz at j=" + std::to_string(j));
        }
    }
}

double AxisStats::period_growth() const { return std::pow(alpha_, 2.0 * period_ * hurst_); }

double AxisStats::variance(long n) const {
    if (n < 0) fail(ErrorCode::NegativeIndex, "variance index must be >= 0");
    const long cycles = n / period_;
    return std::pow(period_growth(), static_cast<double>(cycles)) * var_[static_cast<std::size_t>(n % period_)];
}

double AxisStats::step_covariance(long n) const {
    if (n < 0) fail(ErrorCode::NegativeIndex, "covariance index must be >= 0");
    const long cycles = n / period_;
    return std::pow(period_growth(), static_cast<double>(cycles)) * cov1_[static_cast<std::size_t>(n % period_)];
}

double AxisStats::ratio(long j) const {
    const long m = ((j % period_) + period_) % period_;
    return cov1_[static_cast<std::size_t>(m)] / var_[static_cast<std::size_t>(m)];
}

double h_factor(const AxisStats& stats, long r) {
    if (r < -1) fail(ErrorCode::NegativeIndex, "h is defined for r >= -1");
    if (r == -1) return 1.0;
    const long t = stats.period();
    // r + 1 = l T + m  =>  h(alpha^r) = h(alpha^{T-1})^l h(alpha^{m-1})
    const long l = (r + 1) / t;
    const long m = (r + 1) % t;
    double full = 1.0;
    for (long j = 0; j < t; ++j) full *= stats.ratio(j);
    double partial = 1.0;
    for (long j = 0; j < m; ++j) partial *= stats.ratio(j);
    return std::pow(full, static_cast<double>(l)) * partial;
}

double axis_cov(const AxisStats& stats, long n, long lag) {
    if (n < 0) fail(ErrorCode::NegativeIndex, "field index must be >= 0");
    const long t = stats.period();
    const long k = floor_div(lag, t);
    const long nu = lag - k * t;
    if (k >= 0) {
        const double base = h_factor(stats, n - 1);
        if (base == 0.0) fail(ErrorCode::ZeroVariance, "vanishing one-step covariance before the index");
        return std::pow(h_factor(stats, t - 1), static_cast<double>(k)) * h_factor(stats, nu + n - 1) / base *
               stats.variance(n);
    }
    // lag = -k' T + nu with k' = -k > 0:  Q_n(-k'T + nu) = alpha^{-2k'TH} Q_{n+nu}(k'T - nu)
    const long kp = -k;
    return std::pow(stats.period_growth(), -static_cast<double>(kp)) * axis_cov(stats, n + nu, kp * t - nu);
}

double mmsi_cov(const FirstScaleStats& stats, IndexPair n, IndexPair lag) {
    return axis_cov(stats[0], n[0], lag[0]) * axis_cov(stats[1], n[1], lag[1]);
}

double cross_cov(const FirstScaleStats& stats, IndexPair k, IndexPair j, IndexPair n, IndexPair tau) {
    double out = 1.0;
    for (int i = 0; i < 2; ++i) {
        const AxisStats& s = stats[static_cast<std::size_t>(i)];
        const long t = s.period();
        if (k[i] < 0 || k[i] >= t || j[i] < 0 || j[i] >= t) {
            fail(ErrorCode::OutOfDomain, "component indices must lie in [0, T)");
        }
        if (n[i] < 0) fail(ErrorCode::NegativeIndex, "block index must be >= 0");
        const double prefactor = std::pow(s.period_growth(), static_cast<double>(n[i]));
        const long lag = tau[i] * t + j[i] - k[i];
        if (lag >= 0) {
            const double base = h_factor(s, k[i] - 1);
            if (base == 0.0) fail(ErrorCode::ZeroVariance, "vanishing one-step covariance before the index");
            out *= prefactor * std::pow(h_factor(s, t - 1), static_cast<double>(tau[i])) * h_factor(s, j[i] - 1) /
                   base * s.variance(k[i]);
        } else {
            out *= prefactor * axis_cov(s, k[i], lag);
        }
    }
    return out;
}

ExtendedAxisTable extend(const AxisStats& stats, int periods) {
    if (periods < 1) fail(ErrorCode::InvalidArgument, "need at least one period");
    ExtendedAxisTable table;
    table.period = stats.period();
    const long count = static_cast<long>(periods) * stats.period();
    for (long j = 0; j < count; ++j) {
        table.var.push_back(stats.variance(j));
        table.cov1.push_back(stats.step_covariance(j));
    }
    return table;
}

bool check_ratio_periodicity(const ExtendedAxisTable& table) {
    if (table.var.size() != table.cov1.size() || table.period < 1) return false;
    const auto t = static_cast<std::size_t>(table.period);
    for (std::size_t j = 0; j + t < table.var.size(); ++j) {
        if (table.var[j] == 0.0 || table.var[j + t] == 0.0) return false;
        const double a = table.cov1[j] / table.var[j];
        const double b = table.cov1[j + t] / table.var[j + t];
        if (std::abs(a - b) > 1e-10 * std::max({std::abs(a), std::abs(b), 1e-300})) return false;
    }
    return true;
}

}  // namespace msi
