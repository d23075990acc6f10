#include "magnobattery/cli.hpp"

#include "magnobattery/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace magnobattery::cli {

namespace {

constexpr std::array<std::string_view, 27> kKeys = {
    "omega_a",    "omega_b",    "omega_m",  "omega_q",  "delta_1",     "delta_2",  "delta_3",
    "g_a",        "g_b",        "lambda",   "kappa_a",  "kappa_b",     "kappa_m",  "gamma",
    "t_max",      "dt",         "mode",     "vary",     "vary_values", "vary_min", "vary_max",
    "vary_count", "vary2",      "vary2_values", "vary2_min", "vary2_max", "vary2_count",
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
        !std::isfinite(value)) {
        throw ConfigError("'" + std::string(key) + "': expected a finite number, got '" +
                          std::string(text) + "'");
    }
    return value;
}

std::size_t parse_count(std::string_view key, std::string_view text) {
    text = trim(text);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError("'" + std::string(key) + "': expected a non-negative integer, got '" +
                          std::string(text) + "'");
    }
    return value;
}

std::optional<double> lookup_double(const KeyValues& kv, std::string_view key) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
        return std::nullopt;
    }
    return parse_double(key, it->second);
}

// Reads vary{prefix}, vary{prefix}_values | (_min, _max, _count).
std::optional<VarySpec> parse_vary(const KeyValues& kv, const std::string& prefix) {
    const auto name_it = kv.find(prefix);
    const bool has_values = kv.contains(prefix + "_values");
    const bool has_range = kv.contains(prefix + "_min") || kv.contains(prefix + "_max") ||
                           kv.contains(prefix + "_count");
    if (name_it == kv.end()) {
        if (has_values || has_range) {
            throw ConfigError("'" + prefix + "' values given without '" + prefix + "' parameter name");
        }
        return std::nullopt;
    }

    SweepParameter param;
    try {
        param = parse_sweep_parameter(trim(name_it->second));
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }
    if (has_values == has_range) {
        throw ConfigError("'" + prefix + "' needs exactly one of " + prefix + "_values or " +
                          prefix + "_min/_max/_count");
    }

    if (has_values) {
        VarySpec spec{param, {}};
        const std::string_view list = trim(kv.find(prefix + "_values")->second);
        std::size_t pos = 0;
        while (!list.empty() && pos <= list.size()) {
            const auto comma = std::min(list.find(',', pos), list.size());
            spec.values.push_back(parse_double(prefix + "_values", list.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        if (spec.values.empty()) {
            throw ConfigError("'" + prefix + "_values' is empty");
        }
        return spec;
    }

    for (const char* suffix : {"_min", "_max", "_count"}) {
        if (!kv.contains(prefix + suffix)) {
            throw ConfigError("range for '" + prefix + "' is missing " + prefix + suffix);
        }
    }
    const double lo = parse_double(prefix + "_min", kv.find(prefix + "_min")->second);
    const double hi = parse_double(prefix + "_max", kv.find(prefix + "_max")->second);
    const std::size_t count = parse_count(prefix + "_count", kv.find(prefix + "_count")->second);
    try {
        return VarySpec::linear(param, lo, hi, count);
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

std::span<const std::string_view> config_keys() {
    return kKeys;
}

KeyValues parse_config_text(std::string_view text) {
    KeyValues kv;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        if (!kv.emplace(key, std::string(trim(line.substr(eq + 1)))).second) {
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
    }
    return kv;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

RunConfig build_run_config(const KeyValues& kv) {
    RunConfig config;
    SystemParams& p = config.params;

    const std::pair<std::string_view, double SystemParams::*> fields[] = {
        {"omega_a", &SystemParams::omega_a}, {"omega_b", &SystemParams::omega_b},
        {"omega_m", &SystemParams::omega_m}, {"omega_q", &SystemParams::omega_q},
        {"g_a", &SystemParams::g_a},         {"g_b", &SystemParams::g_b},
        {"lambda", &SystemParams::lambda},   {"kappa_a", &SystemParams::kappa_a},
        {"kappa_b", &SystemParams::kappa_b}, {"kappa_m", &SystemParams::kappa_m},
        {"gamma", &SystemParams::gamma},
    };
    for (const auto& [key, field] : fields) {
        if (auto v = lookup_double(kv, key)) {
            p.*field = *v;
        }
    }

    const auto d1 = lookup_double(kv, "delta_1");
    const auto d2 = lookup_double(kv, "delta_2");
    const auto d3 = lookup_double(kv, "delta_3");
    if (d1 || d2 || d3) {
        Detunings d = derive_detunings(p);
        d.delta_1 = d1.value_or(d.delta_1);
        d.delta_2 = d2.value_or(d.delta_2);
        d.delta_3 = d3.value_or(d.delta_3);
        p.detunings = d;
    }

    try {
        validate(p);
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }

    config.time.t_max = lookup_double(kv, "t_max").value_or(config.time.t_max);
    config.time.dt = lookup_double(kv, "dt").value_or(config.time.dt);
    if (!(config.time.t_max > 0.0) || !(config.time.dt > 0.0) ||
        !(config.time.dt <= config.time.t_max)) {
        throw ConfigError("time grid requires t_max > 0, dt > 0 and dt <= t_max");
    }

    if (const auto it = kv.find("mode"); it != kv.end()) {
        try {
            config.mode = parse_accounting_mode(trim(it->second));
        } catch (const InvalidInput& e) {
            throw ConfigError(e.what());
        }
    }

    config.vary = parse_vary(kv, "vary");
    config.vary2 = parse_vary(kv, "vary2");
    return config;
}

std::string canonical_config(const RunConfig& config) {
    const SystemParams& p = config.params;
    const Detunings d = derive_detunings(p);
    std::string out;
    auto line = [&](std::string_view key, const std::string& value) {
        out.append(key).append(" = ").append(value).append("\n");
    };
    auto num = [&](std::string_view key, double v) { line(key, format_number(v)); };

    num("omega_a", p.omega_a);
    num("omega_b", p.omega_b);
    num("omega_m", p.omega_m);
    num("omega_q", p.omega_q);
    num("delta_1", d.delta_1);
    num("delta_2", d.delta_2);
    num("delta_3", d.delta_3);
    num("g_a", p.g_a);
    num("g_b", p.g_b);
    num("lambda", p.lambda);
    num("kappa_a", p.kappa_a);
    num("kappa_b", p.kappa_b);
    num("kappa_m", p.kappa_m);
    num("gamma", p.gamma);
    num("t_max", config.time.t_max);
    num("dt", config.time.dt);
    line("mode", std::string(to_string(config.mode)));
    for (const auto& [prefix, spec] : {std::pair{"vary", &config.vary}, {"vary2", &config.vary2}}) {
        if (!*spec) {
            continue;
        }
        line(prefix, std::string(to_string((*spec)->parameter)));
        std::string values;
        for (double v : (*spec)->values) {
            values += (values.empty() ? "" : ",") + format_number(v);
        }
        line(std::string(prefix) + "_values", values);
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace magnobattery::cli
