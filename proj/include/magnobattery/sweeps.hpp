// sweeps.hpp — metric time series, single-parameter panel sweeps,
// max-ergotropy contour grids and optimal charging times.
//
// Every parameter point is evaluated independently and results are merged
// by index, so outputs do not depend on the thread count.

#pragma once

#include "magnobattery/metrics.hpp"
#include "magnobattery/model.hpp"
#include "magnobattery/states.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace magnobattery {

enum class SweepParameter {
    lambda,
    g_a,
    g_b,
    delta_1,
    delta_2,
    delta_3,
    gamma,
    kappa_all,  // kappa_a = kappa_b = kappa_m
    kappa_a,
    kappa_b,
    kappa_m,
};

std::string_view to_string(SweepParameter param);
// Throws InvalidInput for unknown names.
SweepParameter parse_sweep_parameter(std::string_view name);

// Copy of `p` with one parameter replaced. Setting a detuning on parameters
// given by mode frequencies first freezes the derived detunings.
SystemParams with_parameter(SystemParams p, SweepParameter param, double value);

struct VarySpec {
    SweepParameter parameter{SweepParameter::lambda};
    std::vector<double> values;

    // `count` evenly spaced values from `min` to `max` inclusive; count >= 2.
    static VarySpec linear(SweepParameter parameter, double min, double max, std::size_t count);

    // Throws InvalidInput for empty or non-finite value lists.
    void validate() const;
};

struct TimeGridSpec {
    double t_max{20.0};
    double dt{0.01};

    std::vector<double> grid() const;
};

struct GridResult {
    std::vector<double> x_values;
    std::vector<double> y_values;
    std::vector<double> z;  // row-major, rows indexed by y
    SweepParameter x_parameter{SweepParameter::g_a};
    SweepParameter y_parameter{SweepParameter::g_b};
    SystemParams base;
    std::string metric{"max_ergotropy"};
    double t_first{0.0};
    double t_last{0.0};
    std::size_t time_points{0};
    double time_step{0.0};
    AccountingMode mode{AccountingMode::paper};

    double at(std::size_t row, std::size_t col) const { return z[row * x_values.size() + col]; }
};

struct SweepCurve {
    double value{0.0};
    std::vector<MetricsSample> series;
};

struct ChargingTime {
    double tau{0.0};
    double e_max{0.0};
};

struct ChargingTimePoint {
    double value{0.0};
    double tau{0.0};
    double e_max{0.0};
};

// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). Exceptions from workers are rethrown in index order.
void parallel_for_index(std::size_t count, std::size_t threads,
                        const std::function<void(std::size_t)>& fn);

std::vector<MetricsSample> time_series(const SystemParams& p, std::span<const double> t_grid,
                                       AccountingMode mode);

std::vector<SweepCurve> panel_sweep(const SystemParams& base, const VarySpec& vary,
                                    std::span<const double> t_grid, AccountingMode mode,
                                    std::size_t threads = 1);

GridResult max_ergotropy_grid(const SystemParams& base, const VarySpec& vary_x,
                              const VarySpec& vary_y, std::span<const double> t_grid,
                              AccountingMode mode, std::size_t threads = 1);

// Earliest grid time at which the stored energy is within tolerance of its grid maximum.
// The tolerance is 1e-9 widened to the sampling error at the peak (|second difference|/8),
// so analytically equal recurrences resolve to the first one.
ChargingTime optimal_charging_time(const SystemParams& p, std::span<const double> t_grid,
                                   AccountingMode mode);

std::vector<ChargingTimePoint> optimal_time_sweep(const SystemParams& base, const VarySpec& vary,
                                                  std::span<const double> t_grid,
                                                  AccountingMode mode, std::size_t threads = 1);

}  // namespace magnobattery
