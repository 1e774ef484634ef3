#include "msi/spectral.hpp"

#include "msi/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace msi {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

long floor_mod(long a, long m) {
    const long r = a % m;
    return r < 0 ? r + m : r;
}

std::complex<double> character(IndexPair n, IndexPair j, const PeriodLattice& u, double sign) {
    const double phase = kTwoPi * (static_cast<double>(n[0] * j[0]) / u.u1 + static_cast<double>(n[1] * j[1]) / u.u2);
    return std::polar(1.0, sign * phase);
}

void require_pair(const HurstVector& hurst) {
    if (hurst.size() != 2) fail(ErrorCode::LengthMismatch, "Hurst vector must have two components");
}

double msi_weight(IndexPair m, IndexPair tau, const HurstVector& hurst, Pair alpha) {
    return std::pow(alpha[0], static_cast<double>(2 * m[0] + tau[0]) * hurst[0]) *
           std::pow(alpha[1], static_cast<double>(2 * m[1] + tau[1]) * hurst[1]);
}

}  // namespace

PeriodLattice::PeriodLattice(int u1_, int u2_) : u1(u1_), u2(u2_) {
    if (u1 < 1 || u2 < 1) fail(ErrorCode::InvalidArgument, "period components must be >= 1");
}

bool PeriodLattice::contains(IndexPair j) const noexcept {
    return j[0] >= 0 && j[0] < u1 && j[1] >= 0 && j[1] < u2;
}

IndexPair PeriodLattice::reduce(IndexPair n) const noexcept { return {floor_mod(n[0], u1), floor_mod(n[1], u2)}; }

std::vector<IndexPair> PeriodLattice::indices() const {
    std::vector<IndexPair> out;
    out.reserve(size());
    for (long j2 = 0; j2 < u2; ++j2) {
        for (long j1 = 0; j1 < u1; ++j1) out.push_back({j1, j2});
    }
    return out;
}

std::size_t LagWindow::size() const noexcept {
    if (hi[0] < lo[0] || hi[1] < lo[1]) return 0;
    return static_cast<std::size_t>(hi[0] - lo[0] + 1) * static_cast<std::size_t>(hi[1] - lo[1] + 1);
}

bool LagWindow::contains(IndexPair tau) const noexcept {
    return tau[0] >= lo[0] && tau[0] <= hi[0] && tau[1] >= lo[1] && tau[1] <= hi[1];
}

std::vector<IndexPair> LagWindow::lags() const {
    std::vector<IndexPair> out;
    out.reserve(size());
    for (long t2 = lo[1]; t2 <= hi[1]; ++t2) {
        for (long t1 = lo[0]; t1 <= hi[0]; ++t1) out.push_back({t1, t2});
    }
    return out;
}

template <class T>
std::size_t LagTable<T>::offset(IndexPair n, IndexPair tau) const {
    if (!lattice_.contains(n)) {
        fail(ErrorCode::OutOfDomain, "index (" + std::to_string(n[0]) + "," + std::to_string(n[1]) + ") outside D_U");
    }
    if (!window_.contains(tau)) {
        fail(ErrorCode::OutOfDomain, "lag (" + std::to_string(tau[0]) + "," + std::to_string(tau[1]) + ") outside window");
    }
    const auto w1 = static_cast<std::size_t>(window_.hi[0] - window_.lo[0] + 1);
    const auto lag = static_cast<std::size_t>(tau[1] - window_.lo[1]) * w1 + static_cast<std::size_t>(tau[0] - window_.lo[0]);
    const auto pos = static_cast<std::size_t>(lattice_.omega(n) - 1);
    return pos * window_.size() + lag;
}

template class LagTable<double>;
template class LagTable<std::complex<double>>;

DensityTable::DensityTable(PeriodLattice lattice, int resolution)
    : lattice_(lattice),
      resolution_(resolution),
      data_(lattice.size() * static_cast<std::size_t>(resolution > 0 ? resolution : 0) *
            static_cast<std::size_t>(resolution > 0 ? resolution : 0)) {
    if (resolution < 2) fail(ErrorCode::InvalidArgument, "frequency resolution must be >= 2");
}

double DensityTable::frequency(int k) const { return kTwoPi * static_cast<double>(k) / (resolution_ - 1); }

std::size_t DensityTable::offset(IndexPair j, int k1, int k2) const {
    if (!lattice_.contains(j)) fail(ErrorCode::OutOfDomain, "density index outside D_U");
    if (k1 < 0 || k2 < 0 || k1 >= resolution_ || k2 >= resolution_) fail(ErrorCode::OutOfDomain, "frequency index");
    const auto res = static_cast<std::size_t>(resolution_);
    return static_cast<std::size_t>(lattice_.omega(j) - 1) * res * res + static_cast<std::size_t>(k1) * res +
           static_cast<std::size_t>(k2);
}

std::complex<double>& DensityTable::at(IndexPair j, int k1, int k2) { return data_[offset(j, k1, k2)]; }
const std::complex<double>& DensityTable::at(IndexPair j, int k1, int k2) const { return data_[offset(j, k1, k2)]; }

RTable r_from_q(const PcCovarianceTable& q) {
    const PeriodLattice& u = q.lattice();
    RTable r(u, q.window());
    const double norm = 1.0 / static_cast<double>(u.size());
    const auto lattice = u.indices();
    for (IndexPair tau : q.window().lags()) {
        for (IndexPair j : lattice) {
            std::complex<double> acc{};
            for (IndexPair n : lattice) acc += character(n, j, u, +1.0) * q.at(n, tau);
            r.at(j, tau) = norm * acc;
        }
    }
    return r;
}

PcCovarianceTable q_from_r(const RTable& r) {
    const PeriodLattice& u = r.lattice();
    PcCovarianceTable q(u, r.window());
    const auto lattice = u.indices();
    double scale = 1.0;
    for (const auto& v : r.data()) scale = std::max(scale, std::abs(v));
    for (IndexPair tau : r.window().lags()) {
        for (IndexPair n : lattice) {
            std::complex<double> acc{};
            for (IndexPair j : lattice) acc += character(n, j, u, -1.0) * r.at(j, tau);
            if (std::abs(acc.imag()) > kRealResidueTolerance * scale) {
                fail(ErrorCode::NonRealResidue, "reconstructed covariance has imaginary part " + std::to_string(acc.imag()));
            }
            q.at(n, tau) = acc.real();
        }
    }
    return q;
}

DensityTable density_from_r(const RTable& r, int resolution) {
    DensityTable d(r.lattice(), resolution);
    const double norm = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
    const auto lags = r.window().lags();
    for (IndexPair j : r.lattice().indices()) {
        for (int k1 = 0; k1 < resolution; ++k1) {
            const double l1 = d.frequency(k1);
            for (int k2 = 0; k2 < resolution; ++k2) {
                const double l2 = d.frequency(k2);
                std::complex<double> acc{};
                for (IndexPair tau : lags) {
                    acc += std::polar(1.0, static_cast<double>(tau[0]) * l1 + static_cast<double>(tau[1]) * l2) *
                           r.at(j, tau);
                }
                d.at(j, k1, k2) = norm * acc;
            }
        }
    }
    return d;
}

MsiCovarianceTable msi_cov_from_pc(const PcCovarianceTable& q, const HurstVector& hurst, Pair alpha) {
    require_pair(hurst);
    if (!(alpha[0] > 0.0 && alpha[1] > 0.0)) fail(ErrorCode::InvalidScale, "alpha must be positive");
    MsiCovarianceTable out(q.lattice(), q.window());
    for (IndexPair tau : q.window().lags()) {
        for (IndexPair m : q.lattice().indices()) out.at(m, tau) = msi_weight(m, tau, hurst, alpha) * q.at(m, tau);
    }
    return out;
}

RTable r_h_from_q(const PcCovarianceTable& q, const HurstVector& hurst, Pair alpha) {
    return r_from_q(msi_cov_from_pc(q, hurst, alpha));
}

DensityTable density_h(const RTable& rh, int resolution) { return density_from_r(rh, resolution); }

std::complex<double> integrate_density(const DensityTable& d, IndexPair j) {
    const int res = d.resolution();
    const double h = kTwoPi / (res - 1);
    std::complex<double> acc{};
    for (int k1 = 0; k1 < res; ++k1) {
        const double w1 = (k1 == 0 || k1 == res - 1) ? 0.5 : 1.0;
        for (int k2 = 0; k2 < res; ++k2) {
            const double w2 = (k2 == 0 || k2 == res - 1) ? 0.5 : 1.0;
            acc += w1 * w2 * d.at(j, k1, k2);
        }
    }
    return acc * h * h;
}

LatticeFunction harmonic_synthesize(const std::vector<SpectralAtom>& atoms, const HurstVector& hurst, Pair alpha,
                                    IndexPair lo, IndexPair hi) {
    require_pair(hurst);
    LatticeFunction out(alpha);
    for (long n1 = lo[0]; n1 <= hi[0]; ++n1) {
        for (long n2 = lo[1]; n2 <= hi[1]; ++n2) {
            std::complex<double> acc{};
            for (const auto& atom : atoms) {
                acc += std::polar(1.0, -(static_cast<double>(n1) * atom.frequency[0] +
                                         static_cast<double>(n2) * atom.frequency[1])) *
                       atom.amplitude;
            }
            const double growth = std::pow(alpha[0], static_cast<double>(n1) * hurst[0]) *
                                  std::pow(alpha[1], static_cast<double>(n2) * hurst[1]);
            out.set({n1, n2}, growth * acc.real());
        }
    }
    return out;
}

}  // namespace msi
