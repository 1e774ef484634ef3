#include "msi/field_model.hpp"

#include "msi/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace msi {

GridField::GridField(Eigen::MatrixXd values, double cell_size, Pair origin)
    : values_(std::move(values)), cell_size_(cell_size), origin_(origin) {
    if (values_.rows() < 1 || values_.cols() < 1) {
        fail(ErrorCode::InvalidArgument, "grid must have at least one row and one column");
    }
    if (!(cell_size_ > 0.0) || !std::isfinite(cell_size_)) {
        fail(ErrorCode::InvalidArgument, "cell size must be positive");
    }
    for (Eigen::Index r = 0; r < values_.rows(); ++r) {
        for (Eigen::Index c = 0; c < values_.cols(); ++c) {
            const double v = values_(r, c);
            if (!std::isfinite(v)) {
                fail(ErrorCode::NonFinite, "grid cell (" + std::to_string(r) + "," + std::to_string(c) + ")");
            }
            if (v < 0.0) {
                fail(ErrorCode::Negative, "grid cell (" + std::to_string(r) + "," + std::to_string(c) + ")");
            }
        }
    }
}

StripSeries::StripSeries(Axis axis, std::vector<double> values) : axis_(axis), values_(std::move(values)) {
    if (values_.size() < 2) fail(ErrorCode::TooShort, "series needs at least two values");
    for (double v : values_) {
        if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "series entry");
    }
}

Breakpoints::Breakpoints(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) fail(ErrorCode::TooShort, "breakpoints need at least two points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i])) fail(ErrorCode::NonFinite, "breakpoint");
        if (i > 0 && !(points_[i] > points_[i - 1])) {
            fail(ErrorCode::DegenerateInterval, "breakpoints must be strictly increasing");
        }
    }
}

ScaleVector::ScaleVector(std::vector<double> ratios) : ratios_(std::move(ratios)) {
    for (double r : ratios_) {
        if (!std::isfinite(r) || !(r > 0.0)) fail(ErrorCode::InvalidScale, "scale ratios must be positive");
    }
}

double ScaleVector::mean() const {
    if (ratios_.empty()) fail(ErrorCode::EmptySet, "empty scale vector");
    return std::accumulate(ratios_.begin(), ratios_.end(), 0.0) / static_cast<double>(ratios_.size());
}

HurstVector::HurstVector(std::vector<double> values) : values_(std::move(values)) {
    for (double h : values_) {
        if (!std::isfinite(h)) fail(ErrorCode::NonFinite, "Hurst exponent");
    }
}

HurstVector::HurstVector(std::initializer_list<double> values) : HurstVector(std::vector<double>(values)) {}

bool MsiModel::simulatable() const {
    auto inside = [](double h) { return h > 0.0 && h < 1.0; };
    return std::all_of(hprime1.begin(), hprime1.end(), inside) &&
           std::all_of(hprime2.begin(), hprime2.end(), inside) && !hprime1.empty() && !hprime2.empty();
}

MsiModel validate_model(const MsiModel& model, ModelUse use) {
    for (double l : model.lambda) {
        if (!std::isfinite(l) || !(l > 1.0)) fail(ErrorCode::InvalidScale, "lambda must exceed 1");
    }
    for (double h : model.hurst) {
        if (!std::isfinite(h) || !(h > 0.0)) fail(ErrorCode::InvalidArgument, "H must be positive");
    }
    if (model.hprime1.size() != model.breakpoints_a.intervals() ||
        model.hprime2.size() != model.breakpoints_b.intervals()) {
        fail(ErrorCode::LengthMismatch, "H' lengths must equal the interval counts of the matching breakpoints");
    }
    auto check = [use](const std::vector<double>& hp) {
        for (double h : hp) {
            if (!std::isfinite(h) || !(h > 0.0)) fail(ErrorCode::InvalidHurstPrime, "H' must be positive");
            if (use == ModelUse::simulation && !(h < 1.0)) {
                fail(ErrorCode::InvalidHurstPrime, "H' = " + std::to_string(h) + " outside (0,1)");
            }
        }
    };
    check(model.hprime1);
    check(model.hprime2);
    return model;
}

}  // namespace msi
