#include "magnobattery/cli.hpp"

#include "magnobattery/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <thread>

namespace magnobattery::cli {

namespace {

const VarySpec& require_vary(const std::optional<VarySpec>& spec, const char* command,
                             const char* key) {
    if (!spec) {
        throw ConfigError(std::string(command) + " requires a '" + key + "' sweep specification");
    }
    return *spec;
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw OutputError("cannot open '" + path + "' for writing");
    }
    file.write(data.data(), static_cast<std::streamsize>(data.size()));
    file.close();
    if (!file) {
        throw OutputError("failed writing '" + path + "'");
    }
}

}  // namespace

CommandOutput execute(Command command, const RunConfig& config, std::size_t threads) {
    const std::vector<double> grid = config.time.grid();
    switch (command) {
        case Command::dynamics:
            return {dynamics_csv(time_series(config.params, grid, config.mode)), std::nullopt};
        case Command::sweep: {
            const VarySpec& vary = require_vary(config.vary, "sweep", "vary");
            return {sweep_csv(vary.parameter,
                              panel_sweep(config.params, vary, grid, config.mode, threads)),
                    std::nullopt};
        }
        case Command::contour: {
            const VarySpec& vx = require_vary(config.vary, "contour", "vary");
            const VarySpec& vy = require_vary(config.vary2, "contour", "vary2");
            if (vx.parameter == vy.parameter) {
                throw ConfigError("contour axes 'vary' and 'vary2' must name different parameters");
            }
            const GridResult result =
                max_ergotropy_grid(config.params, vx, vy, grid, config.mode, threads);
            return {contour_csv(result), contour_metadata(result, config)};
        }
        case Command::opt_time: {
            const VarySpec& vary = require_vary(config.vary, "opt-time", "vary");
            return {opt_time_csv(vary.parameter, optimal_time_sweep(config.params, vary, grid,
                                                                    config.mode, threads)),
                    std::nullopt};
        }
    }
    throw ConfigError("unknown command");
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cavity-magnomechanical quantum battery simulator", "magnobattery"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_path;
    std::string mode_flag;
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("--config", config_path, "Path to a key = value config file");
    app.add_option("--out", out_path, "Output CSV path (default: standard output)");
    app.add_option("--mode", mode_flag, "Accounting mode: paper | repaired");
    app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);

    KeyValues overrides;
    for (std::string_view key : config_keys()) {
        if (key == "mode") {
            continue;  // covered by --mode
        }
        app.add_option("--" + std::string(key), overrides[std::string(key)],
                       "Override config key " + std::string(key))
            ->group("Config overrides");
    }

    auto* dynamics = app.add_subcommand("dynamics", "Metric time series for one parameter set");
    auto* sweep = app.add_subcommand("sweep", "Time series for each value of one parameter");
    auto* contour = app.add_subcommand("contour", "Max-ergotropy grid over two parameters");
    auto* opt_time = app.add_subcommand("opt-time", "Optimal charging time per parameter value");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("magnobattery");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    Command command = Command::dynamics;
    if (sweep->parsed()) {
        command = Command::sweep;
    } else if (contour->parsed()) {
        command = Command::contour;
    } else if (opt_time->parsed()) {
        command = Command::opt_time;
    } else if (!dynamics->parsed()) {
        err << "error: no subcommand given\n";
        return kExitConfig;
    }

    CommandOutput result;
    try {
        KeyValues kv = config_path.empty() ? KeyValues{} : read_config_file(config_path);
        for (const auto& [key, value] : overrides) {
            if (app.count("--" + key) > 0) {
                kv[key] = value;
            }
        }
        if (!mode_flag.empty()) {
            kv["mode"] = mode_flag;
        }
        const RunConfig config = build_run_config(kv);
        if (command == Command::contour && out_path.empty()) {
            throw ConfigError("contour requires --out (a metadata sidecar is written next to it)");
        }
        result = execute(command, config, threads);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (out_path.empty()) {
            out << result.csv;
            out.flush();
            if (!out) {
                throw OutputError("failed writing to standard output");
            }
        } else {
            write_file(out_path, result.csv);
            if (result.metadata) {
                write_file(out_path + ".meta", *result.metadata);
            }
        }
    } catch (const OutputError& e) {
        err << "output error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace magnobattery::cli
