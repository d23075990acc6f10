// metrics.hpp — figures of merit of the battery and charger.

#pragma once

#include "magnobattery/model.hpp"
#include "magnobattery/propagator.hpp"
#include "magnobattery/states.hpp"

#include <Eigen/Dense>

namespace magnobattery {

// H = sum_j (omega_q / 2) sigma_z^(j), diagonal in (|gg>, |eg>, |ge>, |ee>).
struct BatteryHamiltonian {
    double omega_q{1.0};

    Eigen::Vector4d energies() const { return {-omega_q, 0.0, 0.0, omega_q}; }
    Eigen::Matrix4cd matrix() const { return energies().cast<std::complex<double>>().asDiagonal(); }
};

struct MetricsSample {
    double t{0.0};
    double coherence{0.0};
    double energy{0.0};
    double ergotropy{0.0};
    double purity{0.0};
    double norm{0.0};
};

// l1-norm of coherence of the charger: 2|C1 C2| + 2|C1 C3| + 2|C2 C3|.
double coherence_l1(const AmplitudeState& a);

// Tr(rho(t) H) - Tr(rho(0) H) for the battery.
//   paper:          omega_q (1 - |C1|^2 - |C2|^2 - |C3|^2) = omega_q (2|C4|^2 + 1 - N),
//                   with a norm deficit below 1e-12 counted as zero
//   trace_repaired: 2 omega_q |C4|^2
double stored_energy(const AmplitudeState& a, double omega_q, AccountingMode mode);

// Populations of rho (descending) placed on energy levels (ascending).
// Ties are broken by original index so the result is deterministic.
// Throws InvalidInput if rho deviates from Hermitian by more than 1e-10.
DensityMatrix passive_state(const DensityMatrix& rho, const BatteryHamiltonian& h);

// Tr(rho H) - Tr(passive_state(rho) H). Not clamped; may dip to about -1e-12.
double ergotropy(const DensityMatrix& rho, const BatteryHamiltonian& h);

// Re Tr(rho^2)
double purity(const DensityMatrix& rho);

// Bundles every metric for one amplitude state. Ergotropy is clamped at 0.
MetricsSample sample_metrics(const AmplitudeState& a, const SystemParams& p, AccountingMode mode);

}  // namespace magnobattery
