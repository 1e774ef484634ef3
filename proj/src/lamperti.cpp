#include "msi/lamperti.hpp"

#include "msi/error.hpp"

#include <cmath>
#include <string>

namespace msi {
namespace {

void require_hurst_pair(const HurstVector& hurst) {
    if (hurst.size() != 2) fail(ErrorCode::LengthMismatch, "Hurst vector must have two components");
}

long exponent_of(double value, double base, ErrorCode code) {
    if (!(value > 0.0)) fail(code, "lattice coordinates must be positive");
    const double e = std::log(value) / std::log(base);
    const double r = std::round(e);
    if (std::abs(e - r) >= kLatticeTolerance) {
        fail(code, std::to_string(value) + " is not an integer power of " + std::to_string(base));
    }
    return static_cast<long>(r);
}

}  // namespace

LatticeFunction::LatticeFunction(Pair base, Storage values) : base_(base), values_(std::move(values)) {
    for (double a : base_) {
        if (!(a > 1.0) || !std::isfinite(a)) fail(ErrorCode::InvalidScale, "lattice base must exceed 1");
    }
    for (const auto& [n, v] : values_) {
        if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "lattice value");
    }
}

double LatticeFunction::at(IndexPair n) const {
    auto it = values_.find(n);
    if (it == values_.end()) {
        fail(ErrorCode::OffLattice, "no value at (" + std::to_string(n[0]) + "," + std::to_string(n[1]) + ")");
    }
    return it->second;
}

void LatticeFunction::set(IndexPair n, double value) {
    if (!std::isfinite(value)) fail(ErrorCode::NonFinite, "lattice value");
    values_[n] = value;
}

IndexPair lattice_exponent(Pair t, Pair base) {
    return {exponent_of(t[0], base[0], ErrorCode::OffLattice), exponent_of(t[1], base[1], ErrorCode::OffLattice)};
}

double quasi_lamperti(const LatticeFunction& y, const HurstVector& hurst, Pair t) {
    require_hurst_pair(hurst);
    const IndexPair n = lattice_exponent(t, y.base());
    return std::pow(t[0], hurst[0]) * std::pow(t[1], hurst[1]) * y.at(n);
}

double inverse_quasi_lamperti(const LatticeFunction& x, const HurstVector& hurst, IndexPair t) {
    require_hurst_pair(hurst);
    const Pair a = x.base();
    const double weight = std::pow(a[0], -static_cast<double>(t[0]) * hurst[0]) *
                          std::pow(a[1], -static_cast<double>(t[1]) * hurst[1]);
    return weight * x.at(t);
}

LatticeFunction quasi_lamperti_image(const LatticeFunction& y, const HurstVector& hurst) {
    require_hurst_pair(hurst);
    const Pair a = y.base();
    LatticeFunction out(a);
    for (const auto& [n, v] : y.values()) {
        const Pair t{std::pow(a[0], static_cast<double>(n[0])), std::pow(a[1], static_cast<double>(n[1]))};
        out.set(n, std::pow(t[0], hurst[0]) * std::pow(t[1], hurst[1]) * v);
    }
    return out;
}

LatticeFunction inverse_quasi_lamperti_image(const LatticeFunction& x, const HurstVector& hurst) {
    LatticeFunction out(x.base());
    for (const auto& [n, v] : x.values()) out.set(n, inverse_quasi_lamperti(x, hurst, n));
    return out;
}

LatticeFunction apply_dilation(const LatticeFunction& x, const HurstVector& hurst, Pair scale) {
    require_hurst_pair(hurst);
    const Pair a = x.base();
    const IndexPair u{exponent_of(scale[0], a[0], ErrorCode::NonLatticeScale),
                      exponent_of(scale[1], a[1], ErrorCode::NonLatticeScale)};
    if (u[0] < 0 || u[1] < 0) fail(ErrorCode::NonLatticeScale, "dilation steps must be non-negative");
    const double weight = std::pow(scale[0], -hurst[0]) * std::pow(scale[1], -hurst[1]);
    LatticeFunction out(a);
    for (const auto& [n, v] : x.values()) {
        const IndexPair target{n[0] + u[0], n[1] + u[1]};
        if (x.contains(target)) out.set(n, weight * x.at(target));
    }
    return out;
}

LatticeFunction apply_shift(const LatticeFunction& y, IndexPair step) {
    LatticeFunction out(y.base());
    for (const auto& [n, v] : y.values()) {
        const IndexPair target{n[0] + step[0], n[1] + step[1]};
        if (y.contains(target)) out.set(n, y.at(target));
    }
    return out;
}

}  // namespace msi
