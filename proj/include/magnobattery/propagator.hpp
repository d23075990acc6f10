// propagator.hpp — time evolution of the single-excitation amplitudes.
//
// The primary path solves Z(t) = exp(-i A t) Z(0) with a scaling-and-squaring
// Pade exponential and maps back to the physical frame. `oracle_integrate`
// is an independent RK4 integration of the amplitude equations with their
// explicit oscillating factors; it never touches the frame shifts or A.

#pragma once

#include "magnobattery/model.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace magnobattery {

using Amplitudes = Eigen::Vector4cd;

// Amplitudes (C1, C2, C3, C4) at time t:
//   C1 |gg,100>, C2 |gg,010>, C3 |gg,001>, C4 |eg,000>, C5 |ge,000>
// C5 is identical to C4 by exchange symmetry of the two atoms and is not stored.
struct AmplitudeState {
    double t{0.0};
    Amplitudes c{Amplitudes::Zero()};

    // |C1|^2 + |C2|^2 + |C3|^2 + 2|C4|^2
    double norm() const;
};

using Trajectory = std::vector<AmplitudeState>;

// Single excitation in the cavity, atoms and other modes in their ground state.
Amplitudes initial_amplitudes();

// exp(M) by scaling and squaring with a degree-8 diagonal Pade approximant.
// Throws InvalidInput on non-finite entries.
Eigen::Matrix4cd matrix_exponential(const Eigen::Matrix4cd& m);

// exp(-i A t) z0. Throws InvalidInput for t < 0.
Amplitudes propagate(const EvolutionMatrix& a, const Amplitudes& z0, double t);

// C_n = Z_n exp(-i Delta_n t)
Amplitudes z_to_c(const Amplitudes& z, const FrameShifts& f, double t);

// Trajectory on `t_grid` (strictly increasing, t_grid[0] >= 0) starting from
// `c0` at t = 0. Uniformly spaced grids reuse the one-step propagator.
Trajectory evolve(const SystemParams& p, std::span<const double> t_grid,
                  const Amplitudes& c0 = initial_amplitudes());

// Fixed-step RK4 on the physical-frame equations, step at most `max_step`.
Trajectory oracle_integrate(const SystemParams& p, std::span<const double> t_grid,
                            const Amplitudes& c0 = initial_amplitudes(),
                            double max_step = 1e-3);

// Eigenvalues phi_j and right eigenvectors of A, for inspection only.
struct Eigenmodes {
    Eigen::Vector4cd eigenvalues;
    Eigen::Matrix4cd eigenvectors;  // columns

    // sum_j exp(-i phi_j t) |phi_j><phi~_j| z0 with the dual (left) basis.
    // Unreliable near exceptional points where the eigenvectors degenerate.
    Amplitudes propagate(const Amplitudes& z0, double t) const;
};

Eigenmodes eigenmodes(const EvolutionMatrix& a);

// 0, dt, 2 dt, ... up to t_max inclusive (within 1e-9 dt).
// Throws InvalidInput unless 0 < dt <= t_max.
std::vector<double> make_time_grid(double t_max, double dt);

// Throws InvalidInput if the grid is empty, starts below 0, is non-finite or
// not strictly increasing.
void validate_time_grid(std::span<const double> t_grid);

}  // namespace magnobattery
