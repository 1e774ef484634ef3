#pragma once

#include "msi/field_model.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace msi {

/// Half-open index range [begin, end) of a series that the detector is allowed to use.
struct AnalysisWindow {
    std::size_t begin = 0;
    std::size_t end = 0;
};

inline constexpr std::size_t kMinSegmentLength = 3;

/// Segmented quadratic least squares: splits the window into `segments` pieces
/// (each at least kMinSegmentLength points) minimizing the total squared residual of
/// independent quadratic fits. Exhaustive over integer breakpoints; returned points
/// are absolute series indices and include both window ends.
Breakpoints detect_scale_intervals(const StripSeries& series, int segments,
                                   std::optional<AnalysisWindow> window = std::nullopt);

/// Residual sum of squares of the least-squares quadratic through points [begin, end).
double quadratic_fit_residual(std::span<const double> values, std::size_t begin, std::size_t end);

/// lambda_{n} = (b_{n+1} - b_n) / (b_n - b_{n-1}).
ScaleVector scale_from_breakpoints(const Breakpoints& b);

enum class QvMode {
    raw,        // squares of the listed values (matches the published tables)
    increment,  // squares of successive differences
};

/// SS = (1/l_m) * sum of squares; see QvMode for which terms are squared.
/// Raw mode sums all l_m listed values, increment mode the l_m - 1 differences.
double quadratic_variation(std::span<const double> values, std::size_t l_m, QvMode mode = QvMode::raw);

/// log(ratio) / (2 log lambda).
double hurst_from_ratio(double ratio, double lambda);

/// Dyadic estimator of H' on interval i (0-based) of the 1-based strip series X:
/// log( sum (X_{a+2k+2} - X_{a+2k})^2 / sum (X_{a+k+1} - X_{a+k})^2 ) / (2 log 2),
/// k = 1 .. floor(len/2) - 1.
double hurst_prime_dyadic(const StripSeries& strip_sums, const Breakpoints& b, std::size_t interval);

/// hurst_prime_dyadic for every interval.
std::vector<double> hurst_prime_all(const StripSeries& strip_sums, const Breakpoints& b);

/// Partition values x_{(n,m)k}: [interval n][subinterval m][partition k].
using SubintervalSamples = std::vector<std::vector<std::vector<double>>>;

/// Splits each scale interval into `subintervals` equal parts and each part into
/// `partitions` equal cells, integrating the strip step function over every cell
/// (strip k covers [k, k+1)). Fractional cell boundaries split strips proportionally.
SubintervalSamples partition_sums(const StripSeries& series, const Breakpoints& b, int partitions, int subintervals = 2);

struct QuadraticVariationTable {
    QvMode mode = QvMode::raw;
    std::vector<std::vector<double>> ss;  // [interval n][subinterval m]
};

QuadraticVariationTable quadratic_variation_table(const SubintervalSamples& samples, QvMode mode = QvMode::raw);

/// Decimal precision applied inside the Hurst pipeline. Scale ratios are truncated
/// before the log-ratio estimator; subinterval and interval Hurst values are rounded
/// half away from zero before each averaging step. Empty means exact arithmetic.
struct EstimationPrecision {
    std::optional<int> scale_digits;
    std::optional<int> hurst_digits;

    static EstimationPrecision exact() { return {}; }
    /// Precision of the published case study: 3-decimal scales, 2-decimal Hurst values.
    static EstimationPrecision as_reported() { return {3, 2}; }
};

double round_to_digits(double x, int digits);
double truncate_to_digits(double x, int digits);

/// Quadratic-variation ratios SS_{n+1,m}/SS_{n,m} and the Hurst estimates obtained
/// with the scale of transition n (unrounded; only scale_digits applies here).
struct SubintervalHurst {
    std::vector<std::vector<double>> ratio;  // [transition n][subinterval m]
    std::vector<std::vector<double>> hurst;  // [transition n][subinterval m]
};

SubintervalHurst subinterval_hurst(const QuadraticVariationTable& qv, const ScaleVector& scales,
                                   EstimationPrecision precision = EstimationPrecision::exact());

/// Per-axis averages: subinterval pair -> interval H; interval H -> axis H;
/// scale ratios -> axis lambda.
struct AxisSummary {
    double lambda = 0.0;
    std::vector<double> interval_hurst;
    double hurst = 0.0;
};

AxisSummary summarize_axis(const ScaleVector& scales, const SubintervalHurst& estimates,
                           EstimationPrecision precision = EstimationPrecision::exact());

/// Packages two axis summaries and the per-interval H' into a model validated for analysis.
MsiModel assemble_model(const AxisSummary& axis1, const AxisSummary& axis2, std::vector<double> hprime1,
                        std::vector<double> hprime2, Breakpoints breakpoints_a, Breakpoints breakpoints_b);

}  // namespace msi
