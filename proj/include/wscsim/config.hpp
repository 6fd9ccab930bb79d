#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wscsim {

/// How a request's vCPU demand is mapped onto servers.
///   single_server: the full intensity must fit on one server.
///   rack_split:    the demand may be spread across servers of one rack.
enum class PlacementMode { single_server, rack_split };

inline std::string to_string(PlacementMode m) {
    return m == PlacementMode::single_server ? "single-server" : "rack-split";
}

/// Run configuration. Mirrors the flat key=value config file one to one;
/// see parse_config() for the external format.
struct Config {
    int wsc_count = 0;          // W
    int cells_per_wsc = 0;      // C
    int racks_per_cell = 0;     // R
    int servers_per_rack = 0;   // S
    std::int64_t server_capacity = 0;   // vCPU per server
    int service_type_count = 0;
    int types_per_server = 0;
    std::int64_t intensity_min = 0;     // vCPU
    std::int64_t intensity_max = 0;     // vCPU
    int service_time_max = 0;           // slots, durations uniform in 1..max
    int monitoring_period = 0;          // slots between monitoring ticks
    int simulation_slots = 0;
    double initial_load_min = 0.0;      // percent of capacity
    double initial_load_max = 0.0;      // percent of capacity
    double bid_threshold = 0.0;         // tau, percent of capacity
    PlacementMode placement_mode = PlacementMode::rack_split;
    std::int64_t inter_rack_speed = 0;  // stored, unused by core metrics
    std::int64_t intra_rack_speed = 0;  // stored, unused by core metrics
    std::uint64_t seed = 0;
};

struct ConfigError : std::runtime_error {
    int line = 0;
    int column = 0;
    ConfigError(const std::string& msg, int line_ = 0, int column_ = 0)
        : std::runtime_error(line_ > 0 ? "config:" + std::to_string(line_) + ":" +
                                             std::to_string(column_) + ": " + msg
                                       : "config: " + msg),
          line(line_),
          column(column_) {}
};

namespace detail {

inline void fail_invariant(const std::string& field, const std::string& constraint) {
    throw ConfigError("invariant violation: " + field + " " + constraint);
}

} // namespace detail

/// Checks every config invariant; throws ConfigError naming the field and
/// the violated constraint. simulation_slots = 0 is allowed (a zero-length
/// run is well defined and produces empty statistics).
inline void validate_config(const Config& c) {
    using detail::fail_invariant;
    auto require_count = [](const char* name, std::int64_t v) {
        if (v < 1) detail::fail_invariant(name, "must be >= 1");
    };
    require_count("wsc_count", c.wsc_count);
    require_count("cells_per_wsc", c.cells_per_wsc);
    require_count("racks_per_cell", c.racks_per_cell);
    require_count("servers_per_rack", c.servers_per_rack);
    require_count("server_capacity", c.server_capacity);
    require_count("service_type_count", c.service_type_count);
    require_count("types_per_server", c.types_per_server);
    require_count("intensity_min", c.intensity_min);
    require_count("service_time_max", c.service_time_max);
    require_count("monitoring_period", c.monitoring_period);
    if (c.simulation_slots < 0)
        fail_invariant("simulation_slots", "must be >= 0");
    if (c.types_per_server > c.service_type_count)
        fail_invariant("types_per_server", "must be <= service_type_count");
    if (c.intensity_min > c.intensity_max)
        fail_invariant("intensity_min", "must be <= intensity_max");
    if (c.initial_load_min < 0.0 || c.initial_load_min > c.initial_load_max ||
        c.initial_load_max > 100.0)
        fail_invariant("initial_load_min/initial_load_max",
                       "must satisfy 0 <= min <= max <= 100");
    if (!(c.bid_threshold > 0.0 && c.bid_threshold < 100.0))
        fail_invariant("bid_threshold", "must satisfy 0 < tau < 100");
    if (c.placement_mode == PlacementMode::single_server &&
        c.intensity_max > c.server_capacity)
        fail_invariant("intensity_max",
                       "must be <= server_capacity in single-server mode");
}

namespace detail {

struct KeyInfo {
    enum Kind { integer, floating, mode, seed } kind;
};

inline const std::map<std::string, KeyInfo>& config_keys() {
    static const std::map<std::string, KeyInfo> keys = {
        {"wsc_count", {KeyInfo::integer}},
        {"cells_per_wsc", {KeyInfo::integer}},
        {"racks_per_cell", {KeyInfo::integer}},
        {"servers_per_rack", {KeyInfo::integer}},
        {"server_capacity", {KeyInfo::integer}},
        {"service_type_count", {KeyInfo::integer}},
        {"types_per_server", {KeyInfo::integer}},
        {"intensity_min", {KeyInfo::integer}},
        {"intensity_max", {KeyInfo::integer}},
        {"service_time_max", {KeyInfo::integer}},
        {"monitoring_period", {KeyInfo::integer}},
        {"simulation_slots", {KeyInfo::integer}},
        {"initial_load_min", {KeyInfo::floating}},
        {"initial_load_max", {KeyInfo::floating}},
        {"bid_threshold", {KeyInfo::floating}},
        {"placement_mode", {KeyInfo::mode}},
        {"inter_rack_speed", {KeyInfo::integer}},
        {"intra_rack_speed", {KeyInfo::integer}},
        {"seed", {KeyInfo::seed}},
    };
    return keys;
}

inline std::int64_t parse_int(std::string_view text, int line, int col) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.begin(), text.end(), value);
    if (ec != std::errc() || ptr != text.end())
        throw ConfigError("expected integer value", line, col);
    return value;
}

inline std::uint64_t parse_seed(std::string_view text, int line, int col) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.begin(), text.end(), value);
    if (ec != std::errc() || ptr != text.end())
        throw ConfigError("expected unsigned integer value", line, col);
    return value;
}

inline double parse_double(std::string_view text, int line, int col) {
    try {
        std::size_t pos = 0;
        double value = std::stod(std::string(text), &pos);
        if (pos != text.size())
            throw ConfigError("expected numeric value", line, col);
        return value;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("expected numeric value", line, col);
    }
}

} // namespace detail

/// Parses the flat key=value config format: one `key = value` per line,
/// `#` starts a comment, blank lines ignored. Every key of Config is
/// required, unknown and duplicate keys are rejected, and the resulting
/// Config is validated before it is returned.
inline Config parse_config(std::string_view text) {
    Config cfg;
    std::map<std::string, bool> seen;
    for (const auto& [key, info] : detail::config_keys()) seen[key] = false;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
        std::size_t line_start = pos;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);

        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string_view::npos) continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        std::string_view content = line.substr(begin, end - begin + 1);

        std::size_t eq = content.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("expected 'key = value'", line_no,
                              static_cast<int>(begin + content.size()));

        auto trim = [](std::string_view s) {
            std::size_t b = s.find_first_not_of(" \t");
            if (b == std::string_view::npos) return std::string_view{};
            std::size_t e = s.find_last_not_of(" \t");
            return s.substr(b, e - b + 1);
        };
        std::string_view key = trim(content.substr(0, eq));
        std::string_view value = trim(content.substr(eq + 1));
        int value_col = static_cast<int>(
            value.empty() ? begin + eq + 2
                          : static_cast<std::size_t>(value.data() - line.data()) + 1);
        (void)line_start;

        if (key.empty())
            throw ConfigError("missing key before '='", line_no,
                              static_cast<int>(begin + 1));
        auto it = detail::config_keys().find(std::string(key));
        if (it == detail::config_keys().end())
            throw ConfigError("unknown key \"" + std::string(key) + "\"", line_no,
                              static_cast<int>(begin + 1));
        if (seen[it->first])
            throw ConfigError("duplicate key \"" + std::string(key) + "\"", line_no,
                              static_cast<int>(begin + 1));
        if (value.empty())
            throw ConfigError("missing value for \"" + std::string(key) + "\"",
                              line_no, value_col);
        seen[it->first] = true;

        using detail::KeyInfo;
        switch (it->second.kind) {
        case KeyInfo::mode: {
            if (value == "single-server")
                cfg.placement_mode = PlacementMode::single_server;
            else if (value == "rack-split")
                cfg.placement_mode = PlacementMode::rack_split;
            else
                throw ConfigError(
                    "placement_mode must be \"single-server\" or \"rack-split\"",
                    line_no, value_col);
            break;
        }
        case KeyInfo::seed:
            cfg.seed = detail::parse_seed(value, line_no, value_col);
            break;
        case KeyInfo::floating: {
            double v = detail::parse_double(value, line_no, value_col);
            if (key == "initial_load_min") cfg.initial_load_min = v;
            else if (key == "initial_load_max") cfg.initial_load_max = v;
            else cfg.bid_threshold = v;
            break;
        }
        case KeyInfo::integer: {
            std::int64_t v = detail::parse_int(value, line_no, value_col);
            if (key == "wsc_count") cfg.wsc_count = static_cast<int>(v);
            else if (key == "cells_per_wsc") cfg.cells_per_wsc = static_cast<int>(v);
            else if (key == "racks_per_cell") cfg.racks_per_cell = static_cast<int>(v);
            else if (key == "servers_per_rack") cfg.servers_per_rack = static_cast<int>(v);
            else if (key == "server_capacity") cfg.server_capacity = v;
            else if (key == "service_type_count") cfg.service_type_count = static_cast<int>(v);
            else if (key == "types_per_server") cfg.types_per_server = static_cast<int>(v);
            else if (key == "intensity_min") cfg.intensity_min = v;
            else if (key == "intensity_max") cfg.intensity_max = v;
            else if (key == "service_time_max") cfg.service_time_max = static_cast<int>(v);
            else if (key == "monitoring_period") cfg.monitoring_period = static_cast<int>(v);
            else if (key == "simulation_slots") cfg.simulation_slots = static_cast<int>(v);
            else if (key == "inter_rack_speed") cfg.inter_rack_speed = v;
            else cfg.intra_rack_speed = v;
            break;
        }
        }
    }

    for (const auto& [key, was_seen] : seen)
        if (!was_seen)
            throw ConfigError("missing key \"" + key + "\"");

    validate_config(cfg);
    return cfg;
}

inline Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace wscsim
