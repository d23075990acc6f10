#include "magnobattery/metrics.hpp"

#include "magnobattery/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>

namespace magnobattery {

namespace {

constexpr double kHermitianTol = 1e-10;
// Eigenvalues above this are rounding residue and are clamped to zero.
constexpr double kNegativeResidue = -1e-12;

std::array<int, 4> stable_order(const Eigen::Vector4d& values, bool descending) {
    std::array<int, 4> idx{};
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return descending ? values(a) > values(b) : values(a) < values(b);
    });
    return idx;
}

Eigen::Vector4d populations(const DensityMatrix& rho) {
    if (rho.dim() != 4 || rho.entries.cols() != 4) {
        throw InvalidInput("battery density matrix must be 4x4");
    }
    if (!rho.entries.allFinite() || !rho.is_hermitian(kHermitianTol)) {
        throw InvalidInput("density matrix is not Hermitian");
    }
    // Symmetrize away the sub-tolerance anti-Hermitian part.
    const Eigen::Matrix4cd herm = 0.5 * (rho.entries + rho.entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(herm, Eigen::EigenvaluesOnly);
    Eigen::Vector4d p = solver.eigenvalues();
    for (int i = 0; i < 4; ++i) {
        if (p(i) < 0.0 && p(i) >= kNegativeResidue) {
            p(i) = 0.0;
        }
    }
    return p;
}

double mean_energy(const DensityMatrix& rho, const BatteryHamiltonian& h) {
    const Eigen::Vector4d e = h.energies();
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        sum += e(i) * rho.entries(i, i).real();
    }
    return sum;
}

double passive_energy(const Eigen::Vector4d& p, const BatteryHamiltonian& h) {
    const Eigen::Vector4d e = h.energies();
    const auto pop_order = stable_order(p, true);
    const auto level_order = stable_order(e, false);
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
        sum += p(pop_order[k]) * e(level_order[k]);
    }
    return sum;
}

constexpr double kNormRoundoff = 1e-12;

}  // namespace

double coherence_l1(const AmplitudeState& a) {
    const double m1 = std::abs(a.c(0));
    const double m2 = std::abs(a.c(1));
    const double m3 = std::abs(a.c(2));
    return 2.0 * (m1 * m2 + m1 * m3 + m2 * m3);
}

double stored_energy(const AmplitudeState& a, double omega_q, AccountingMode mode) {
    if (mode == AccountingMode::trace_repaired) {
        return 2.0 * omega_q * std::norm(a.c(3));
    }
    // 1 - P = 2|C4|^2 + (1 - N); a norm deficit at roundoff level is treated as zero so that
    // lossless runs with an uncharged battery report exactly zero energy.
    double deficit = 1.0 - a.norm();
    if (std::abs(deficit) <= kNormRoundoff) {
        deficit = 0.0;
    }
    return omega_q * (2.0 * std::norm(a.c(3)) + deficit);
}

DensityMatrix passive_state(const DensityMatrix& rho, const BatteryHamiltonian& h) {
    const Eigen::Vector4d p = populations(rho);
    const auto pop_order = stable_order(p, true);
    const auto level_order = stable_order(h.energies(), false);

    DensityMatrix eta{Eigen::MatrixXcd::Zero(4, 4), rho.basis_labels};
    for (int k = 0; k < 4; ++k) {
        eta.entries(level_order[k], level_order[k]) = p(pop_order[k]);
    }
    return eta;
}

double ergotropy(const DensityMatrix& rho, const BatteryHamiltonian& h) {
    const Eigen::Vector4d p = populations(rho);
    return mean_energy(rho, h) - passive_energy(p, h);
}

double purity(const DensityMatrix& rho) {
    // Tr(rho^2) = sum_ij rho_ij rho_ji
    return (rho.entries.cwiseProduct(rho.entries.transpose())).sum().real();
}

MetricsSample sample_metrics(const AmplitudeState& a, const SystemParams& p, AccountingMode mode) {
    const DensityMatrix rho = battery_density(a, mode);
    const BatteryHamiltonian h{p.omega_q};
    MetricsSample s;
    s.t = a.t;
    s.coherence = coherence_l1(a);
    s.energy = stored_energy(a, p.omega_q, mode);
    s.ergotropy = std::max(0.0, ergotropy(rho, h));
    s.purity = purity(rho);
    s.norm = a.norm();
    return s;
}

}  // namespace magnobattery
