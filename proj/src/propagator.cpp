#include "magnobattery/propagator.hpp"

#include "magnobattery/error.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <string>

namespace magnobattery {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

constexpr int kPadeDegree = 8;
constexpr double kScaledNormBound = 0.5;
// Uniform grids re-anchor on a freshly computed exponential this often so
// rounding from repeated one-step products cannot accumulate.
constexpr std::size_t kReanchorInterval = 256;

std::array<double, kPadeDegree + 1> pade_coefficients() {
    // c_k = (2q-k)! q! / ((2q)! k! (q-k)!)
    std::array<double, kPadeDegree + 1> c{};
    c[0] = 1.0;
    const double q = kPadeDegree;
    for (int k = 1; k <= kPadeDegree; ++k) {
        c[k] = c[k - 1] * (q - k + 1) / (k * (2.0 * q - k + 1));
    }
    return c;
}

double one_norm(const Eigen::Matrix4cd& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

Eigen::Matrix4cd step_propagator(const EvolutionMatrix& a, double t) {
    return matrix_exponential(-kI * t * a.entries);
}

bool is_uniform(std::span<const double> t_grid) {
    if (t_grid.size() < 3) {
        return false;
    }
    const double dt = (t_grid.back() - t_grid.front()) / static_cast<double>(t_grid.size() - 1);
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
        const double expected = t_grid.front() + static_cast<double>(k) * dt;
        if (std::abs(t_grid[k] - expected) > 1e-12 * std::max(1.0, std::abs(expected))) {
            return false;
        }
    }
    return true;
}

// Right-hand side of the physical-frame equations, dC/dt = -i H(t) C.
struct PhysicalFrameRhs {
    SystemParams p;
    Detunings d;

    Amplitudes operator()(double t, const Amplitudes& c) const {
        const cd e1 = std::exp(kI * (d.delta_1 * t));
        const cd e2 = std::exp(kI * (d.delta_2 * t));
        const cd e3 = std::exp(kI * (d.delta_3 * t));
        Amplitudes h;
        h(0) = -kI * (0.5 * p.kappa_a) * c(0) + p.g_a * std::conj(e2) * c(1) +
               2.0 * p.lambda * std::conj(e3) * c(3);
        h(1) = p.g_a * e2 * c(0) - kI * (0.5 * p.kappa_b) * c(1) + p.g_b * std::conj(e1) * c(2);
        h(2) = p.g_b * e1 * c(1) - kI * (0.5 * p.kappa_m) * c(2);
        h(3) = p.lambda * e3 * c(0) - kI * (0.5 * p.gamma) * c(3);
        return -kI * h;
    }
};

}  // namespace

double AmplitudeState::norm() const {
    return std::norm(c(0)) + std::norm(c(1)) + std::norm(c(2)) + 2.0 * std::norm(c(3));
}

Amplitudes initial_amplitudes() {
    return Amplitudes(1.0, 0.0, 0.0, 0.0);
}

Eigen::Matrix4cd matrix_exponential(const Eigen::Matrix4cd& m) {
    if (!m.allFinite()) {
        throw InvalidInput("matrix_exponential: non-finite entries");
    }
    static const auto coeff = pade_coefficients();

    const double norm = one_norm(m);
    int squarings = 0;
    if (norm > kScaledNormBound) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / kScaledNormBound)));
    }
    const Eigen::Matrix4cd x = m * std::ldexp(1.0, -squarings);

    Eigen::Matrix4cd numer = coeff[0] * Eigen::Matrix4cd::Identity();
    Eigen::Matrix4cd denom = numer;
    Eigen::Matrix4cd power = Eigen::Matrix4cd::Identity();
    for (int k = 1; k <= kPadeDegree; ++k) {
        power = power * x;
        numer += coeff[k] * power;
        denom += ((k % 2 == 0) ? coeff[k] : -coeff[k]) * power;
    }
    Eigen::Matrix4cd result = denom.partialPivLu().solve(numer);
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result;
}

Amplitudes propagate(const EvolutionMatrix& a, const Amplitudes& z0, double t) {
    if (!(t >= 0.0)) {
        throw InvalidInput("propagate: t must be >= 0");
    }
    if (t == 0.0) {
        return z0;
    }
    return step_propagator(a, t) * z0;
}

Amplitudes z_to_c(const Amplitudes& z, const FrameShifts& f, double t) {
    const Eigen::Vector4d shifts = f.as_vector();
    Amplitudes c;
    for (int n = 0; n < 4; ++n) {
        c(n) = z(n) * std::exp(-kI * (shifts(n) * t));
    }
    return c;
}

void validate_time_grid(std::span<const double> t_grid) {
    if (t_grid.empty()) {
        throw InvalidInput("time grid is empty");
    }
    if (!std::isfinite(t_grid.front()) || t_grid.front() < 0.0) {
        throw InvalidInput("time grid must start at t >= 0");
    }
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
        if (!std::isfinite(t_grid[k]) || !(t_grid[k] > t_grid[k - 1])) {
            throw InvalidInput("time grid must be finite and strictly increasing");
        }
    }
}

std::vector<double> make_time_grid(double t_max, double dt) {
    if (!std::isfinite(t_max) || !std::isfinite(dt) || !(dt > 0.0) || !(dt <= t_max)) {
        throw InvalidInput("time grid requires 0 < dt <= t_max");
    }
    const auto steps = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
    std::vector<double> grid(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        grid[k] = static_cast<double>(k) * dt;
    }
    return grid;
}

Trajectory evolve(const SystemParams& p, std::span<const double> t_grid, const Amplitudes& c0) {
    validate(p);
    validate_time_grid(t_grid);

    const EvolutionMatrix a = build_evolution_matrix(p);
    const FrameShifts shifts = derive_frame_shifts(derive_detunings(p));

    // Z(0) = C(0): the frame phases vanish at t = 0.
    const Amplitudes& z0 = c0;

    Trajectory out;
    out.reserve(t_grid.size());
    auto emit = [&](double t, const Amplitudes& z) {
        out.push_back({t, z_to_c(z, shifts, t)});
    };

    if (!is_uniform(t_grid)) {
        for (double t : t_grid) {
            emit(t, propagate(a, z0, t));
        }
        return out;
    }

    const double t0 = t_grid.front();
    const double dt = (t_grid.back() - t0) / static_cast<double>(t_grid.size() - 1);
    const Eigen::Matrix4cd step = step_propagator(a, dt);
    Amplitudes z = propagate(a, z0, t0);
    emit(t_grid[0], z);
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
        if (k % kReanchorInterval == 0) {
            z = propagate(a, z0, t_grid[k]);
        } else {
            z = step * z;
        }
        emit(t_grid[k], z);
    }
    return out;
}

Trajectory oracle_integrate(const SystemParams& p, std::span<const double> t_grid,
                            const Amplitudes& c0, double max_step) {
    validate(p);
    validate_time_grid(t_grid);
    if (!(max_step > 0.0)) {
        throw InvalidInput("oracle_integrate: max_step must be > 0");
    }

    const PhysicalFrameRhs rhs{p, derive_detunings(p)};
    Trajectory out;
    out.reserve(t_grid.size());

    double t = 0.0;
    Amplitudes c = c0;
    for (double target : t_grid) {
        const double span = target - t;
        if (span > 0.0) {
            const auto n = static_cast<std::size_t>(std::ceil(span / max_step));
            const double h = span / static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double ti = t + static_cast<double>(i) * h;
                const Amplitudes k1 = rhs(ti, c);
                const Amplitudes k2 = rhs(ti + 0.5 * h, c + 0.5 * h * k1);
                const Amplitudes k3 = rhs(ti + 0.5 * h, c + 0.5 * h * k2);
                const Amplitudes k4 = rhs(ti + h, c + h * k3);
                c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            t = target;
        }
        out.push_back({target, c});
    }
    return out;
}

Amplitudes Eigenmodes::propagate(const Amplitudes& z0, double t) const {
    const Amplitudes coords = eigenvectors.partialPivLu().solve(z0);
    Amplitudes phased;
    for (int j = 0; j < 4; ++j) {
        phased(j) = std::exp(-kI * eigenvalues(j) * t) * coords(j);
    }
    return eigenvectors * phased;
}

Eigenmodes eigenmodes(const EvolutionMatrix& a) {
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(a.entries);
    if (solver.info() != Eigen::Success) {
        throw InvalidInput("eigenmodes: eigen decomposition failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace magnobattery
