#pragma once

#include "msi/field_model.hpp"
#include "msi/lamperti.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace msi {

/// Period U of a periodically correlated lattice field and its index set
/// D_U = {0..U1-1} x {0..U2-1}.
struct PeriodLattice {
    int u1 = 1;
    int u2 = 1;

    PeriodLattice() = default;
    PeriodLattice(int u1, int u2);

    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(u1) * static_cast<std::size_t>(u2); }
    [[nodiscard]] bool contains(IndexPair j) const noexcept;
    [[nodiscard]] IndexPair reduce(IndexPair n) const noexcept;
    /// Linear position j2*U1 + j1 + 1 of j within D_U.
    [[nodiscard]] long omega(IndexPair j) const noexcept { return j[1] * u1 + j[0] + 1; }
    [[nodiscard]] std::vector<IndexPair> indices() const;

    friend bool operator==(const PeriodLattice&, const PeriodLattice&) = default;
};

/// Inclusive rectangular window of lags [lo1..hi1] x [lo2..hi2].
struct LagWindow {
    IndexPair lo{0, 0};
    IndexPair hi{0, 0};

    [[nodiscard]] std::size_t size() const noexcept;
    [[nodiscard]] bool contains(IndexPair tau) const noexcept;
    [[nodiscard]] std::vector<IndexPair> lags() const;

    friend bool operator==(const LagWindow&, const LagWindow&) = default;
};

/// Values indexed by (n in D_U, tau in window).
template <class T>
class LagTable {
public:
    LagTable(PeriodLattice lattice, LagWindow window)
        : lattice_(lattice), window_(window), data_(lattice.size() * window.size(), T{}) {}

    [[nodiscard]] const PeriodLattice& lattice() const noexcept { return lattice_; }
    [[nodiscard]] const LagWindow& window() const noexcept { return window_; }

    [[nodiscard]] T& at(IndexPair n, IndexPair tau) { return data_[offset(n, tau)]; }
    [[nodiscard]] const T& at(IndexPair n, IndexPair tau) const { return data_[offset(n, tau)]; }

    /// Access with n reduced modulo U (the PC periodicity Q_{n+U} = Q_n).
    [[nodiscard]] const T& periodic_at(IndexPair n, IndexPair tau) const { return at(lattice_.reduce(n), tau); }

    [[nodiscard]] const std::vector<T>& data() const noexcept { return data_; }

private:
    [[nodiscard]] std::size_t offset(IndexPair n, IndexPair tau) const;

    PeriodLattice lattice_;
    LagWindow window_;
    std::vector<T> data_;
};

using PcCovarianceTable = LagTable<double>;     // Q_n(tau) of the periodic field
using MsiCovarianceTable = LagTable<double>;    // Q^H_m(tau) of the sampled MSI field
using RTable = LagTable<std::complex<double>>;  // Fourier coefficients R_j(tau)

/// Spectral densities d_j on a uniform frequency grid over [0, 2pi]^2, endpoints included.
class DensityTable {
public:
    DensityTable(PeriodLattice lattice, int resolution);

    [[nodiscard]] const PeriodLattice& lattice() const noexcept { return lattice_; }
    [[nodiscard]] int resolution() const noexcept { return resolution_; }
    [[nodiscard]] double frequency(int k) const;
    [[nodiscard]] std::complex<double>& at(IndexPair j, int k1, int k2);
    [[nodiscard]] const std::complex<double>& at(IndexPair j, int k1, int k2) const;

private:
    [[nodiscard]] std::size_t offset(IndexPair j, int k1, int k2) const;

    PeriodLattice lattice_;
    int resolution_;
    std::vector<std::complex<double>> data_;
};

inline constexpr int kDefaultFrequencyResolution = 128;
inline constexpr double kRealResidueTolerance = 1e-10;

/// R_j(tau) = (1/U1U2) sum_n exp(2 pi i (n1 j1/U1 + n2 j2/U2)) Q_n(tau).
RTable r_from_q(const PcCovarianceTable& q);

/// Q_n(tau) = sum_j exp(-2 pi i (n1 j1/U1 + n2 j2/U2)) R_j(tau); NonRealResidue when the
/// imaginary part exceeds the tolerance.
PcCovarianceTable q_from_r(const RTable& r);

/// d_j(lambda) = (1/4 pi^2) sum_tau exp(i tau . lambda) R_j(tau), truncated to the lag window.
DensityTable density_from_r(const RTable& r, int resolution = kDefaultFrequencyResolution);

/// Q^H_m(tau) = alpha1^{(2m1+tau1)H1} alpha2^{(2m2+tau2)H2} Q_m(tau), m in D_U.
MsiCovarianceTable msi_cov_from_pc(const PcCovarianceTable& q, const HurstVector& hurst, Pair alpha);

/// R^H_j(tau): the Fourier coefficients of the MSI-weighted covariance.
RTable r_h_from_q(const PcCovarianceTable& q, const HurstVector& hurst, Pair alpha);

/// d^H_j: density_from_r applied to the weighted coefficients.
DensityTable density_h(const RTable& rh, int resolution = kDefaultFrequencyResolution);

/// Trapezoid integral of d_j over [0, 2pi]^2.
std::complex<double> integrate_density(const DensityTable& d, IndexPair j);

struct SpectralAtom {
    Pair frequency{};
    std::complex<double> amplitude{};
};

/// X(alpha^n) = alpha1^{n1 H1} alpha2^{n2 H2} sum_atoms exp(-i n . lambda) amplitude for
/// every n in [lo, hi]. The real part is kept; conjugate-symmetric atoms give a real field.
LatticeFunction harmonic_synthesize(const std::vector<SpectralAtom>& atoms, const HurstVector& hurst, Pair alpha,
                                    IndexPair lo, IndexPair hi);

extern template class LagTable<double>;
extern template class LagTable<std::complex<double>>;

}  // namespace msi
