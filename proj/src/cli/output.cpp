#include "magnobattery/cli.hpp"

#include <charconv>
#include <cstdio>
#include <system_error>

namespace magnobattery::cli {

std::string format_number(double value) {
    if (value == 0.0) {
        return "0";
    }
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
    if (ec != std::errc()) {
        return "nan";
    }
    return std::string(buf, ptr);
}

namespace {

void append_row(std::string& out, std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& cell : cells) {
        if (!first) {
            out += ',';
        }
        out += cell;
        first = false;
    }
    out += '\n';
}

void append_sample(std::string& out, std::string_view prefix, const MetricsSample& s) {
    out += prefix;
    append_row(out, {format_number(s.t), format_number(s.coherence), format_number(s.energy),
                     format_number(s.ergotropy), format_number(s.purity), format_number(s.norm)});
}

}  // namespace

std::string dynamics_csv(std::span<const MetricsSample> samples) {
    std::string out = "t,coherence,energy,ergotropy,purity,norm\n";
    for (const auto& s : samples) {
        append_sample(out, "", s);
    }
    return out;
}

std::string sweep_csv(SweepParameter param, std::span<const SweepCurve> curves) {
    std::string out = "param_name,param_value,t,coherence,energy,ergotropy,purity,norm\n";
    const std::string name(to_string(param));
    for (const auto& curve : curves) {
        const std::string prefix = name + "," + format_number(curve.value) + ",";
        for (const auto& s : curve.series) {
            append_sample(out, prefix, s);
        }
    }
    return out;
}

std::string contour_csv(const GridResult& grid) {
    std::string out = "x_name,x,y_name,y,max_ergotropy\n";
    const std::string x_name(to_string(grid.x_parameter));
    const std::string y_name(to_string(grid.y_parameter));
    for (std::size_t row = 0; row < grid.y_values.size(); ++row) {
        for (std::size_t col = 0; col < grid.x_values.size(); ++col) {
            append_row(out, {x_name, format_number(grid.x_values[col]), y_name,
                             format_number(grid.y_values[row]), format_number(grid.at(row, col))});
        }
    }
    return out;
}

std::string contour_metadata(const GridResult& grid, const RunConfig& config) {
    const std::string canonical = canonical_config(config);
    char hash[17];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical)));

    std::string out;
    out += "# contour metadata\n";
    out += "metric = " + grid.metric + "\n";
    out += "x_name = " + std::string(to_string(grid.x_parameter)) + "\n";
    out += "y_name = " + std::string(to_string(grid.y_parameter)) + "\n";
    out += "x_count = " + std::to_string(grid.x_values.size()) + "\n";
    out += "y_count = " + std::to_string(grid.y_values.size()) + "\n";
    out += "horizon_start = " + format_number(grid.t_first) + "\n";
    out += "horizon_end = " + format_number(grid.t_last) + "\n";
    out += "time_points = " + std::to_string(grid.time_points) + "\n";
    out += "grid_step = " + format_number(grid.time_step) + "\n";
    out += "accounting_mode = " + std::string(to_string(grid.mode)) + "\n";
    out += "config_hash = fnv1a64:" + std::string(hash) + "\n";
    out += "# resolved configuration\n";
    out += canonical;
    return out;
}

std::string opt_time_csv(SweepParameter param, std::span<const ChargingTimePoint> points) {
    std::string out = "param_name,param_value,tau,e_max\n";
    const std::string name(to_string(param));
    for (const auto& pt : points) {
        append_row(out, {name, format_number(pt.value), format_number(pt.tau),
                         format_number(pt.e_max)});
    }
    return out;
}

}  // namespace magnobattery::cli
