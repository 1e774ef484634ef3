#pragma once

#include "msi/field_model.hpp"

#include <map>

namespace msi {

/// Values of a two-parameter field on the geometric lattice alpha^n, keyed by
/// the integer exponent pair n. The same container holds a stationary/periodic
/// counterpart Y(n) and a sampled MSI field X(alpha^n).
class LatticeFunction {
public:
    using Storage = std::map<IndexPair, double>;

    explicit LatticeFunction(Pair base, Storage values = {});

    [[nodiscard]] Pair base() const noexcept { return base_; }
    [[nodiscard]] const Storage& values() const noexcept { return values_; }
    [[nodiscard]] bool contains(IndexPair n) const { return values_.contains(n); }
    [[nodiscard]] double at(IndexPair n) const;
    void set(IndexPair n, double value);
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

private:
    Pair base_;
    Storage values_;
};

/// Tolerance of the lattice membership test |log_alpha t - round(log_alpha t)|.
inline constexpr double kLatticeTolerance = 1e-9;

/// Integer exponent n with alpha^n = t, or OffLattice.
IndexPair lattice_exponent(Pair t, Pair base);

/// (L_{H,alpha} Y)(t) = t1^H1 t2^H2 Y(log_alpha t).
double quasi_lamperti(const LatticeFunction& y, const HurstVector& hurst, Pair t);

/// (L^{-1}_{H,alpha} X)(t) = alpha1^{-t1 H1} alpha2^{-t2 H2} X(alpha^t).
double inverse_quasi_lamperti(const LatticeFunction& x, const HurstVector& hurst, IndexPair t);

/// Whole-lattice forms of the two transforms above.
LatticeFunction quasi_lamperti_image(const LatticeFunction& y, const HurstVector& hurst);
LatticeFunction inverse_quasi_lamperti_image(const LatticeFunction& x, const HurstVector& hurst);

/// Renormalized dilation D_{H,Lambda} X(t) = prod lambda_i^{-H_i} X(Lambda o t), with
/// lambda_i = alpha_i^{u_i}, u_i >= 0. The result is defined on every n with n + u stored.
LatticeFunction apply_dilation(const LatticeFunction& x, const HurstVector& hurst, Pair scale);

/// Shift S_u Y(n) = Y(n + u) on the stored index set.
LatticeFunction apply_shift(const LatticeFunction& y, IndexPair step);

}  // namespace msi
