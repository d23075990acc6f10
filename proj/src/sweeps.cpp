#include "magnobattery/sweeps.hpp"

#include "magnobattery/error.hpp"
#include "magnobattery/propagator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace magnobattery {

namespace {

struct NamedParameter {
    SweepParameter param;
    std::string_view name;
};

constexpr NamedParameter kParameterNames[] = {
    {SweepParameter::lambda, "lambda"},   {SweepParameter::g_a, "g_a"},
    {SweepParameter::g_b, "g_b"},         {SweepParameter::delta_1, "delta_1"},
    {SweepParameter::delta_2, "delta_2"}, {SweepParameter::delta_3, "delta_3"},
    {SweepParameter::gamma, "gamma"},     {SweepParameter::kappa_all, "kappa_all"},
    {SweepParameter::kappa_a, "kappa_a"}, {SweepParameter::kappa_b, "kappa_b"},
    {SweepParameter::kappa_m, "kappa_m"},
};

constexpr double kEnergyTieTol = 1e-9;

double max_ergotropy(const SystemParams& p, std::span<const double> t_grid, AccountingMode mode) {
    const BatteryHamiltonian h{p.omega_q};
    double best = 0.0;
    for (const AmplitudeState& a : evolve(p, t_grid)) {
        best = std::max(best, ergotropy(battery_density(a, mode), h));
    }
    return best;
}

}  // namespace

std::string_view to_string(SweepParameter param) {
    for (const auto& entry : kParameterNames) {
        if (entry.param == param) {
            return entry.name;
        }
    }
    return "unknown";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
    for (const auto& entry : kParameterNames) {
        if (entry.name == name) {
            return entry.param;
        }
    }
    throw InvalidInput("unknown sweep parameter '" + std::string(name) + "'");
}

SystemParams with_parameter(SystemParams p, SweepParameter param, double value) {
    auto set_detuning = [&](double Detunings::*field) {
        Detunings d = derive_detunings(p);
        d.*field = value;
        p.detunings = d;
    };
    switch (param) {
        case SweepParameter::lambda: p.lambda = value; break;
        case SweepParameter::g_a: p.g_a = value; break;
        case SweepParameter::g_b: p.g_b = value; break;
        case SweepParameter::delta_1: set_detuning(&Detunings::delta_1); break;
        case SweepParameter::delta_2: set_detuning(&Detunings::delta_2); break;
        case SweepParameter::delta_3: set_detuning(&Detunings::delta_3); break;
        case SweepParameter::gamma: p.gamma = value; break;
        case SweepParameter::kappa_all: p.kappa_a = p.kappa_b = p.kappa_m = value; break;
        case SweepParameter::kappa_a: p.kappa_a = value; break;
        case SweepParameter::kappa_b: p.kappa_b = value; break;
        case SweepParameter::kappa_m: p.kappa_m = value; break;
    }
    return p;
}

VarySpec VarySpec::linear(SweepParameter parameter, double min, double max, std::size_t count) {
    if (count < 2) {
        throw InvalidInput("linear range needs count >= 2");
    }
    if (!std::isfinite(min) || !std::isfinite(max)) {
        throw InvalidInput("linear range bounds must be finite");
    }
    VarySpec spec{parameter, {}};
    spec.values.resize(count);
    const double step = (max - min) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        spec.values[i] = min + static_cast<double>(i) * step;
    }
    spec.values.back() = max;
    return spec;
}

void VarySpec::validate() const {
    if (values.empty()) {
        throw InvalidInput("sweep over " + std::string(to_string(parameter)) + " has no values");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidInput("sweep values must be finite");
        }
    }
}

std::vector<double> TimeGridSpec::grid() const {
    return make_time_grid(t_max, dt);
}

void parallel_for_index(std::size_t count, std::size_t threads,
                        const std::function<void(std::size_t)>& fn) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }

    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (std::size_t w = 0; w < threads; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

std::vector<MetricsSample> time_series(const SystemParams& p, std::span<const double> t_grid,
                                       AccountingMode mode) {
    const Trajectory traj = evolve(p, t_grid);
    std::vector<MetricsSample> out;
    out.reserve(traj.size());
    for (const AmplitudeState& a : traj) {
        out.push_back(sample_metrics(a, p, mode));
    }
    return out;
}

std::vector<SweepCurve> panel_sweep(const SystemParams& base, const VarySpec& vary,
                                    std::span<const double> t_grid, AccountingMode mode,
                                    std::size_t threads) {
    vary.validate();
    std::vector<SweepCurve> curves(vary.values.size());
    parallel_for_index(curves.size(), threads, [&](std::size_t i) {
        const double v = vary.values[i];
        curves[i] = {v, time_series(with_parameter(base, vary.parameter, v), t_grid, mode)};
    });
    return curves;
}

GridResult max_ergotropy_grid(const SystemParams& base, const VarySpec& vary_x,
                              const VarySpec& vary_y, std::span<const double> t_grid,
                              AccountingMode mode, std::size_t threads) {
    vary_x.validate();
    vary_y.validate();
    if (vary_x.parameter == vary_y.parameter) {
        throw InvalidInput("contour axes must vary different parameters");
    }
    validate_time_grid(t_grid);

    GridResult result;
    result.x_values = vary_x.values;
    result.y_values = vary_y.values;
    result.x_parameter = vary_x.parameter;
    result.y_parameter = vary_y.parameter;
    result.base = base;
    result.t_first = t_grid.front();
    result.t_last = t_grid.back();
    result.time_points = t_grid.size();
    result.time_step = t_grid.size() > 1 ? (t_grid.back() - t_grid.front()) /
                                               static_cast<double>(t_grid.size() - 1)
                                         : 0.0;
    result.mode = mode;

    const std::size_t cols = vary_x.values.size();
    result.z.assign(cols * vary_y.values.size(), 0.0);
    parallel_for_index(result.z.size(), threads, [&](std::size_t cell) {
        const std::size_t row = cell / cols;
        const std::size_t col = cell % cols;
        SystemParams p = with_parameter(base, vary_x.parameter, vary_x.values[col]);
        p = with_parameter(p, vary_y.parameter, vary_y.values[row]);
        result.z[cell] = max_ergotropy(p, t_grid, mode);
    });
    return result;
}

ChargingTime optimal_charging_time(const SystemParams& p, std::span<const double> t_grid,
                                   AccountingMode mode) {
    const Trajectory traj = evolve(p, t_grid);
    std::vector<double> energy(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        energy[k] = stored_energy(traj[k], p.omega_q, mode);
    }
    const auto peak_it = std::max_element(energy.begin(), energy.end());
    const double peak = *peak_it;
    // Grid samples of equally tall peaks differ by up to E''·h²/8 ≈ |second difference|/8;
    // such peaks count as ties so the earliest one wins.
    double tol = kEnergyTieTol;
    if (energy.size() >= 3) {
        const auto m = std::clamp<std::size_t>(
            static_cast<std::size_t>(peak_it - energy.begin()), 1, energy.size() - 2);
        tol = std::max(tol, std::abs(energy[m - 1] - 2.0 * energy[m] + energy[m + 1]) / 8.0);
    }
    for (std::size_t k = 0; k < energy.size(); ++k) {
        if (energy[k] >= peak - tol) {
            return {traj[k].t, energy[k]};
        }
    }
    return {traj.front().t, energy.front()};  // unreachable: the peak itself qualifies
}

std::vector<ChargingTimePoint> optimal_time_sweep(const SystemParams& base, const VarySpec& vary,
                                                  std::span<const double> t_grid,
                                                  AccountingMode mode, std::size_t threads) {
    vary.validate();
    std::vector<ChargingTimePoint> out(vary.values.size());
    parallel_for_index(out.size(), threads, [&](std::size_t i) {
        const double v = vary.values[i];
        const ChargingTime ct = optimal_charging_time(with_parameter(base, vary.parameter, v),
                                                      t_grid, mode);
        out[i] = {v, ct.tau, ct.e_max};
    });
    return out;
}

}  // namespace magnobattery
