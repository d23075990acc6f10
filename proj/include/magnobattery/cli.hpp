// cli.hpp — run configuration, CSV rendering and subcommand drivers.
//
// Config files are flat `key = value` lines with `#` comments. Command-line
// `--key value` overrides take precedence over the file. All data output is
// a pure function of the resolved configuration.

#pragma once

#include "magnobattery/model.hpp"
#include "magnobattery/states.hpp"
#include "magnobattery/sweeps.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace magnobattery::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Output could not be written (exit code 3).
class OutputError : public std::runtime_error {
public:
    explicit OutputError(const std::string& what) : std::runtime_error(what) {}
};

using KeyValues = std::map<std::string, std::string, std::less<>>;

// Every key accepted in a config file or as a `--key value` override.
std::span<const std::string_view> config_keys();

// Parses `key = value` lines. Blank lines and `#` comments are skipped.
// Throws ConfigError on syntax errors, unknown or repeated keys.
KeyValues parse_config_text(std::string_view text);

// Reads and parses a config file. Throws ConfigError if unreadable.
KeyValues read_config_file(const std::string& path);

struct RunConfig {
    SystemParams params;
    TimeGridSpec time;
    AccountingMode mode{AccountingMode::paper};
    std::optional<VarySpec> vary;
    std::optional<VarySpec> vary2;
};

// Resolves typed configuration. Direct detunings override the ones derived
// from mode frequencies key by key. Throws ConfigError.
RunConfig build_run_config(const KeyValues& kv);

// Deterministic `key = value` rendering of the resolved config (no paths or thread counts).
std::string canonical_config(const RunConfig& config);

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

// General format, at most 12 significant digits, '.' separator, no "-0".
std::string format_number(double value);

std::string dynamics_csv(std::span<const MetricsSample> samples);
std::string sweep_csv(SweepParameter param, std::span<const SweepCurve> curves);
std::string contour_csv(const GridResult& grid);
std::string contour_metadata(const GridResult& grid, const RunConfig& config);
std::string opt_time_csv(SweepParameter param, std::span<const ChargingTimePoint> points);

enum class Command { dynamics, sweep, contour, opt_time };

// Runs one subcommand and returns the CSV text (plus the contour sidecar).
// Throws ConfigError when the config lacks what the command needs.
struct CommandOutput {
    std::string csv;
    std::optional<std::string> metadata;
};
CommandOutput execute(Command command, const RunConfig& config, std::size_t threads);

// Full command line (without argv[0]). Data goes to `--out` or to `out`;
// diagnostics go to `err`. Returns 0, 2 or 3.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace magnobattery::cli
