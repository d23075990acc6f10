// model.hpp — system parameters, detunings, frame shifts and the constant
// evolution matrix of the single-excitation amplitude equations.

#pragma once

#include <Eigen/Dense>

#include <optional>

namespace magnobattery {

// Frequency mismatches between neighbouring modes:
//   delta_1 = omega_b - omega_m  (magnon - phonon)
//   delta_2 = omega_a - omega_b  (cavity - magnon)
//   delta_3 = omega_q - omega_a  (atom - cavity)
struct Detunings {
    double delta_1{0.0};
    double delta_2{0.0};
    double delta_3{0.0};

    friend bool operator==(const Detunings&, const Detunings&) = default;
};

// Rates and frequencies of the interaction-picture Hamiltonian, in units of a
// reference coupling. Both atoms share the coupling `lambda`.
//
// Detunings can be given directly; when `detunings` is set it wins over the
// four mode frequencies. omega_q is still needed because it sets the battery
// energy scale.
struct SystemParams {
    double omega_a{1.0};
    double omega_b{1.0};
    double omega_m{1.0};
    double omega_q{1.0};

    double g_a{0.0};     // cavity-magnon
    double g_b{0.0};     // magnon-phonon
    double lambda{0.0};  // atom-cavity, per atom

    double kappa_a{0.0};  // cavity decay
    double kappa_b{0.0};  // magnon decay
    double kappa_m{0.0};  // phonon decay
    double gamma{0.0};    // atomic spontaneous emission

    std::optional<Detunings> detunings;

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

// Throws InvalidInput if any field is non-finite or any coupling/decay rate is negative.
void validate(const SystemParams& p);

// Reference frequencies that remove the explicit time dependence: C_n = Z_n exp(-i Delta_n t).
struct FrameShifts {
    double Delta_1{0.0};
    double Delta_2{0.0};
    double Delta_3{0.0};
    double Delta_4{0.0};

    Eigen::Vector4d as_vector() const { return {Delta_1, Delta_2, Delta_3, Delta_4}; }

    friend bool operator==(const FrameShifts&, const FrameShifts&) = default;
};

// i dZ/dt = A Z in basis (Z1, Z2, Z3, Z4) = (cavity, magnon, phonon, one atom excited).
// Not symmetric: the cavity amplitude feels 2*lambda because both atoms feed it.
struct EvolutionMatrix {
    Eigen::Matrix4cd entries{Eigen::Matrix4cd::Zero()};
};

Detunings derive_detunings(const SystemParams& p);
FrameShifts derive_frame_shifts(const Detunings& d);
EvolutionMatrix build_evolution_matrix(const SystemParams& p);

}  // namespace magnobattery
