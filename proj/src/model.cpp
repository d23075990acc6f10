#include "magnobattery/model.hpp"

#include "magnobattery/error.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace magnobattery {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw InvalidInput(std::string("SystemParams: ") + name + " is not finite");
    }
}

void require_nonnegative(double v, const char* name) {
    require_finite(v, name);
    if (v < 0.0) {
        throw InvalidInput(std::string("SystemParams: ") + name + " must be >= 0");
    }
}

}  // namespace

void validate(const SystemParams& p) {
    require_finite(p.omega_a, "omega_a");
    require_finite(p.omega_b, "omega_b");
    require_finite(p.omega_m, "omega_m");
    require_finite(p.omega_q, "omega_q");
    require_nonnegative(p.g_a, "g_a");
    require_nonnegative(p.g_b, "g_b");
    require_nonnegative(p.lambda, "lambda");
    require_nonnegative(p.kappa_a, "kappa_a");
    require_nonnegative(p.kappa_b, "kappa_b");
    require_nonnegative(p.kappa_m, "kappa_m");
    require_nonnegative(p.gamma, "gamma");
    if (p.detunings) {
        require_finite(p.detunings->delta_1, "delta_1");
        require_finite(p.detunings->delta_2, "delta_2");
        require_finite(p.detunings->delta_3, "delta_3");
    }
}

Detunings derive_detunings(const SystemParams& p) {
    if (p.detunings) {
        return *p.detunings;
    }
    return {p.omega_b - p.omega_m, p.omega_a - p.omega_b, p.omega_q - p.omega_a};
}

FrameShifts derive_frame_shifts(const Detunings& d) {
    return {
        2.0 * d.delta_3 - d.delta_2,
        2.0 * d.delta_3 - 2.0 * d.delta_2,
        2.0 * d.delta_3 - 2.0 * d.delta_2 - d.delta_1,
        d.delta_3 - d.delta_2,
    };
}

EvolutionMatrix build_evolution_matrix(const SystemParams& p) {
    using cd = std::complex<double>;
    const FrameShifts f = derive_frame_shifts(derive_detunings(p));

    // y_n = -(i kappa_n / 2 + Delta_n)
    auto diag = [](double kappa, double shift) { return -cd(shift, 0.5 * kappa); };

    EvolutionMatrix a;
    Eigen::Matrix4cd& m = a.entries;
    m(0, 0) = diag(p.kappa_a, f.Delta_1);
    m(1, 1) = diag(p.kappa_b, f.Delta_2);
    m(2, 2) = diag(p.kappa_m, f.Delta_3);
    m(3, 3) = diag(p.gamma, f.Delta_4);

    m(0, 1) = m(1, 0) = p.g_a;
    m(1, 2) = m(2, 1) = p.g_b;
    m(0, 3) = 2.0 * p.lambda;
    m(3, 0) = p.lambda;
    return a;
}

}  // namespace magnobattery
