#include "msi/estimate.hpp"

#include "msi/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace msi {
namespace {

bool is_integral(double x) { return std::abs(x - std::round(x)) < 1e-9; }

double mean_of(const std::vector<double>& v) {
    if (v.empty()) fail(ErrorCode::EmptySet, "cannot average an empty set");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Integral of the strip step function over [x0, x1) (strip k covers [k, k+1)).
double integrate_strips(std::span<const double> values, double x0, double x1) {
    double acc = 0.0;
    const auto first = static_cast<std::size_t>(std::max(0.0, std::floor(x0)));
    for (std::size_t k = first; k < values.size() && static_cast<double>(k) < x1; ++k) {
        const double lo = std::max(x0, static_cast<double>(k));
        const double hi = std::min(x1, static_cast<double>(k + 1));
        if (hi > lo) acc += (hi - lo) * values[k];
    }
    return acc;
}

}  // namespace

double quadratic_fit_residual(std::span<const double> values, std::size_t begin, std::size_t end) {
    if (end > values.size() || end < begin + kMinSegmentLength) {
        fail(ErrorCode::TooShort, "quadratic fit needs at least three points");
    }
    const auto n = static_cast<Eigen::Index>(end - begin);
    const double centre = 0.5 * static_cast<double>(begin + end - 1);
    const double half = std::max(0.5 * static_cast<double>(end - begin - 1), 1.0);
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = (static_cast<double>(begin) + static_cast<double>(i) - centre) / half;
        design(i, 0) = 1.0;
        design(i, 1) = x;
        design(i, 2) = x * x;
        y(i) = values[begin + static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(y);
    return (y - design * coef).squaredNorm();
}

Breakpoints detect_scale_intervals(const StripSeries& series, int segments, std::optional<AnalysisWindow> window) {
    if (segments < 1) fail(ErrorCode::InvalidArgument, "segments must be >= 1");
    const AnalysisWindow w = window.value_or(AnalysisWindow{0, series.size()});
    if (w.end > series.size() || w.begin >= w.end) fail(ErrorCode::OutOfExtent, "analysis window outside the series");
    const std::size_t len = w.end - w.begin;
    const auto segs = static_cast<std::size_t>(segments);
    if (len < kMinSegmentLength * segs) {
        fail(ErrorCode::TooShort, "series of length " + std::to_string(len) + " cannot hold " +
                                      std::to_string(segments) + " segments");
    }
    const auto values = series.values();

    // cost[i][j]: residual of one quadratic over window-relative points [i, j).
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> cost(len + 1, std::vector<double>(len + 1, kInf));
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t j = i + kMinSegmentLength; j <= len; ++j) {
            cost[i][j] = quadratic_fit_residual(values, w.begin + i, w.begin + j);
        }
    }

    // best[s][j]: minimal cost of covering [0, j) with s segments; prev stores the last split.
    std::vector<std::vector<double>> best(segs + 1, std::vector<double>(len + 1, kInf));
    std::vector<std::vector<std::size_t>> prev(segs + 1, std::vector<std::size_t>(len + 1, 0));
    best[0][0] = 0.0;
    for (std::size_t s = 1; s <= segs; ++s) {
        for (std::size_t j = s * kMinSegmentLength; j <= len; ++j) {
            for (std::size_t i = (s - 1) * kMinSegmentLength; i + kMinSegmentLength <= j; ++i) {
                if (best[s - 1][i] == kInf) continue;
                const double c = best[s - 1][i] + cost[i][j];
                if (c < best[s][j]) {
                    best[s][j] = c;
                    prev[s][j] = i;
                }
            }
        }
    }

    std::vector<double> points(segs + 1);
    std::size_t j = len;
    for (std::size_t s = segs; s > 0; --s) {
        points[s] = static_cast<double>(w.begin + j);
        j = prev[s][j];
    }
    points[0] = static_cast<double>(w.begin);
    return Breakpoints(std::move(points));
}

ScaleVector scale_from_breakpoints(const Breakpoints& b) {
    if (b.size() < 3) fail(ErrorCode::TooShort, "need at least three breakpoints");
    std::vector<double> ratios;
    for (std::size_t n = 1; n + 1 < b.size(); ++n) {
        const double before = b.length(n - 1);
        const double after = b.length(n);
        if (before == 0.0 || after == 0.0) fail(ErrorCode::DegenerateInterval, "zero-length scale interval");
        ratios.push_back(after / before);
    }
    return ScaleVector(std::move(ratios));
}

double quadratic_variation(std::span<const double> values, std::size_t l_m, QvMode mode) {
    if (values.size() != l_m) {
        fail(ErrorCode::LengthMismatch, "expected " + std::to_string(l_m) + " values, got " + std::to_string(values.size()));
    }
    if (l_m < 2) fail(ErrorCode::TooShort, "quadratic variation needs at least two samples");
    double acc = 0.0;
    if (mode == QvMode::raw) {
        for (double v : values) acc += v * v;
    } else {
        for (std::size_t k = 1; k < l_m; ++k) {
            const double d = values[k] - values[k - 1];
            acc += d * d;
        }
    }
    return acc / static_cast<double>(l_m);
}

double hurst_from_ratio(double ratio, double lambda) {
    if (!(ratio > 0.0) || !std::isfinite(ratio)) fail(ErrorCode::InvalidRatio, "ratio must be positive");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) fail(ErrorCode::InvalidScale, "lambda must be positive");
    if (lambda == 1.0) fail(ErrorCode::UnitScale, "lambda = 1 carries no scale information");
    return std::log(ratio) / (2.0 * std::log(lambda));
}

double hurst_prime_dyadic(const StripSeries& strip_sums, const Breakpoints& b, std::size_t interval) {
    if (interval >= b.intervals()) fail(ErrorCode::OutOfExtent, "interval index beyond the breakpoints");
    const double a = b[interval];
    const double len = b.length(interval);
    if (!is_integral(a) || !is_integral(len)) {
        fail(ErrorCode::InvalidArgument, "dyadic estimator needs integer strip breakpoints");
    }
    if (len < 4.0) fail(ErrorCode::TooShort, "interval must span at least four strips");
    const auto start = static_cast<long>(std::round(a));
    const long terms = static_cast<long>(std::round(len)) / 2 - 1;
    // X is 1-based: X_i = strip_sums[i - 1].
    auto x = [&](long i) {
        if (i < 1 || static_cast<std::size_t>(i) > strip_sums.size()) {
            fail(ErrorCode::OutOfExtent, "strip " + std::to_string(i) + " outside the series");
        }
        return strip_sums[static_cast<std::size_t>(i - 1)];
    };
    double wide = 0.0;
    double narrow = 0.0;
    for (long k = 1; k <= terms; ++k) {
        const double d2 = x(start + 2 * k + 2) - x(start + 2 * k);
        const double d1 = x(start + k + 1) - x(start + k);
        wide += d2 * d2;
        narrow += d1 * d1;
    }
    if (narrow == 0.0) fail(ErrorCode::ZeroDenominator, "single-step increments vanish");
    if (wide == 0.0) fail(ErrorCode::InvalidRatio, "double-step increments vanish");
    return std::log(wide / narrow) / (2.0 * std::log(2.0));
}

std::vector<double> hurst_prime_all(const StripSeries& strip_sums, const Breakpoints& b) {
    std::vector<double> out;
    for (std::size_t i = 0; i < b.intervals(); ++i) out.push_back(hurst_prime_dyadic(strip_sums, b, i));
    return out;
}

SubintervalSamples partition_sums(const StripSeries& series, const Breakpoints& b, int partitions, int subintervals) {
    if (partitions < 1 || subintervals < 1) fail(ErrorCode::InvalidArgument, "partition counts must be positive");
    if (b[0] < 0.0 || b[b.size() - 1] > static_cast<double>(series.size())) {
        fail(ErrorCode::OutOfExtent, "breakpoints outside the series");
    }
    SubintervalSamples out(b.intervals());
    for (std::size_t n = 0; n < b.intervals(); ++n) {
        const double sub = b.length(n) / subintervals;
        const double cell = sub / partitions;
        out[n].resize(static_cast<std::size_t>(subintervals));
        for (int m = 0; m < subintervals; ++m) {
            for (int k = 0; k < partitions; ++k) {
                const double x0 = b[n] + m * sub + k * cell;
                out[n][static_cast<std::size_t>(m)].push_back(integrate_strips(series.values(), x0, x0 + cell));
            }
        }
    }
    return out;
}

QuadraticVariationTable quadratic_variation_table(const SubintervalSamples& samples, QvMode mode) {
    QuadraticVariationTable table;
    table.mode = mode;
    for (const auto& interval : samples) {
        std::vector<double> row;
        for (const auto& sub : interval) row.push_back(quadratic_variation(sub, sub.size(), mode));
        table.ss.push_back(std::move(row));
    }
    return table;
}

double round_to_digits(double x, int digits) {
    const double p = std::pow(10.0, digits);
    // The nudge absorbs binary representation error at decimal ties (1.455 -> 1.46).
    const double scaled = x * p;
    return std::round(scaled + std::copysign(1e-9 * std::max(1.0, std::abs(scaled)), scaled)) / p;
}

double truncate_to_digits(double x, int digits) {
    const double p = std::pow(10.0, digits);
    const double scaled = x * p;
    return std::trunc(scaled + std::copysign(1e-9 * std::max(1.0, std::abs(scaled)), scaled)) / p;
}

SubintervalHurst subinterval_hurst(const QuadraticVariationTable& qv, const ScaleVector& scales,
                                   EstimationPrecision precision) {
    if (qv.ss.size() != scales.size() + 1) {
        fail(ErrorCode::LengthMismatch, "need one more scale interval than scale ratios");
    }
    SubintervalHurst out;
    for (std::size_t n = 0; n + 1 < qv.ss.size(); ++n) {
        if (qv.ss[n].size() != qv.ss[n + 1].size()) fail(ErrorCode::LengthMismatch, "subinterval counts differ");
        double lambda = scales[n];
        if (precision.scale_digits) lambda = truncate_to_digits(lambda, *precision.scale_digits);
        std::vector<double> ratios;
        std::vector<double> hursts;
        for (std::size_t m = 0; m < qv.ss[n].size(); ++m) {
            if (qv.ss[n][m] == 0.0) fail(ErrorCode::ZeroDenominator, "vanishing quadratic variation");
            const double r = qv.ss[n + 1][m] / qv.ss[n][m];
            ratios.push_back(r);
            hursts.push_back(hurst_from_ratio(r, lambda));
        }
        out.ratio.push_back(std::move(ratios));
        out.hurst.push_back(std::move(hursts));
    }
    return out;
}

AxisSummary summarize_axis(const ScaleVector& scales, const SubintervalHurst& estimates, EstimationPrecision precision) {
    if (estimates.hurst.size() != scales.size()) fail(ErrorCode::LengthMismatch, "one Hurst row per scale ratio");
    AxisSummary out;
    out.lambda = scales.mean();
    for (auto row : estimates.hurst) {
        if (precision.hurst_digits) {
            for (double& h : row) h = round_to_digits(h, *precision.hurst_digits);
        }
        double h = mean_of(row);
        if (precision.hurst_digits) h = round_to_digits(h, *precision.hurst_digits);
        out.interval_hurst.push_back(h);
    }
    out.hurst = mean_of(out.interval_hurst);
    return out;
}

MsiModel assemble_model(const AxisSummary& axis1, const AxisSummary& axis2, std::vector<double> hprime1,
                        std::vector<double> hprime2, Breakpoints breakpoints_a, Breakpoints breakpoints_b) {
    MsiModel model;
    model.lambda = {axis1.lambda, axis2.lambda};
    model.hurst = {axis1.hurst, axis2.hurst};
    model.hprime1 = std::move(hprime1);
    model.hprime2 = std::move(hprime2);
    model.breakpoints_a = std::move(breakpoints_a);
    model.breakpoints_b = std::move(breakpoints_b);
    return validate_model(model, ModelUse::analysis);
}

}  // namespace msi
