#pragma once

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace msi {

using Pair = std::array<double, 2>;
using IndexPair = std::array<long, 2>;

/// Dense accumulation grid (mm per cell). Rows index vertical strips,
/// columns index horizontal strips.
class GridField {
public:
    explicit GridField(Eigen::MatrixXd values, double cell_size = 1.0, Pair origin = {0.0, 0.0});

    [[nodiscard]] const Eigen::MatrixXd& values() const noexcept { return values_; }
    [[nodiscard]] Eigen::Index rows() const noexcept { return values_.rows(); }
    [[nodiscard]] Eigen::Index cols() const noexcept { return values_.cols(); }
    [[nodiscard]] double operator()(Eigen::Index r, Eigen::Index c) const { return values_(r, c); }
    [[nodiscard]] double cell_size() const noexcept { return cell_size_; }
    [[nodiscard]] Pair origin() const noexcept { return origin_; }
    [[nodiscard]] double total() const { return values_.sum(); }

private:
    Eigen::MatrixXd values_;
    double cell_size_;
    Pair origin_;
};

enum class Axis { vertical, horizontal, time };

/// One-dimensional accumulated series along an axis (strip sums or a time series).
class StripSeries {
public:
    StripSeries(Axis axis, std::vector<double> values);

    [[nodiscard]] Axis axis() const noexcept { return axis_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

private:
    Axis axis_;
    std::vector<double> values_;
};

/// Strictly increasing interval end points in strip (or time-step) units.
class Breakpoints {
public:
    explicit Breakpoints(std::vector<double> points);

    [[nodiscard]] std::span<const double> points() const noexcept { return points_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] std::size_t intervals() const noexcept { return points_.size() - 1; }
    [[nodiscard]] double operator[](std::size_t i) const { return points_[i]; }
    [[nodiscard]] double length(std::size_t interval) const {
        return points_[interval + 1] - points_[interval];
    }

    friend bool operator==(const Breakpoints&, const Breakpoints&) = default;

private:
    std::vector<double> points_;
};

/// Successive interval-length ratios, one per interior breakpoint.
class ScaleVector {
public:
    explicit ScaleVector(std::vector<double> ratios);

    [[nodiscard]] std::span<const double> ratios() const noexcept { return ratios_; }
    [[nodiscard]] std::size_t size() const noexcept { return ratios_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return ratios_[i]; }
    [[nodiscard]] double mean() const;

private:
    std::vector<double> ratios_;
};

/// Dimensionless exponents. Values above one are legitimate for MSI fields.
class HurstVector {
public:
    HurstVector() = default;
    explicit HurstVector(std::vector<double> values);
    HurstVector(std::initializer_list<double> values);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

/// Fitted simple MSI model: scale and Hurst pairs plus per-interval H' on each axis.
struct MsiModel {
    Pair lambda{};
    Pair hurst{};
    std::vector<double> hprime1;
    std::vector<double> hprime2;
    Breakpoints breakpoints_a{std::vector<double>{0.0, 1.0}};
    Breakpoints breakpoints_b{std::vector<double>{0.0, 1.0}};

    /// True when every H' lies strictly inside (0,1), so the fBs kernels are valid.
    [[nodiscard]] bool simulatable() const;

    friend bool operator==(const MsiModel&, const MsiModel&) = default;
};

enum class ModelUse {
    simulation,  // H' must lie in (0,1)
    analysis,    // H' only needs to be positive and finite
};

/// Returns the model unchanged when its invariants hold for the requested use.
MsiModel validate_model(const MsiModel& model, ModelUse use = ModelUse::simulation);

}  // namespace msi
