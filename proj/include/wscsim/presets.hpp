#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "wscsim/config.hpp"

namespace wscsim {

/// Named, ready-to-run scenario. The config text round-trips through the
/// regular parser, so presets and config files behave identically.
struct Preset {
    std::string_view name;
    std::string_view description;
    std::string_view config_text;
};

namespace detail {

// Shared full-scale baseline: 4 WSCs x 25 cells x 100 racks x 40 servers.
// Variants below override single lines of this block.
inline constexpr std::string_view kFullScaleCommon = R"(
wsc_count = 4
cells_per_wsc = 25
racks_per_cell = 100
servers_per_rack = 40
server_capacity = 100
intensity_min = 10
intensity_max = 800
simulation_slots = 200
inter_rack_speed = 1
intra_rack_speed = 10
placement_mode = rack-split
seed = 1
)";

inline constexpr std::string_view kLowBand = R"(
initial_load_min = 20
initial_load_max = 25
bid_threshold = 30
)";

inline constexpr std::string_view kHighBand = R"(
initial_load_min = 80
initial_load_max = 85
bid_threshold = 15
)";

} // namespace detail

inline std::span<const Preset> all_presets();

inline std::optional<Preset> find_preset(std::string_view name) {
    for (const Preset& p : all_presets())
        if (p.name == name) return p;
    return std::nullopt;
}

inline Config preset_config(std::string_view name) {
    auto p = find_preset(name);
    if (!p)
        throw ConfigError("unknown preset \"" + std::string(name) + "\"");
    return parse_config(p->config_text);
}

inline std::span<const Preset> all_presets() {
    static const std::string t1_low =
        std::string(detail::kFullScaleCommon) + std::string(detail::kLowBand) + R"(
service_type_count = 500
types_per_server = 5
service_time_max = 10
monitoring_period = 10
)";
    static const std::string t1_high =
        std::string(detail::kFullScaleCommon) + std::string(detail::kHighBand) + R"(
service_type_count = 500
types_per_server = 5
service_time_max = 10
monitoring_period = 10
)";
    static const std::string t2_low =
        std::string(detail::kFullScaleCommon) + std::string(detail::kLowBand) + R"(
service_type_count = 100
types_per_server = 5
service_time_max = 10
monitoring_period = 10
)";
    static const std::string t2_high =
        std::string(detail::kFullScaleCommon) + std::string(detail::kHighBand) + R"(
service_type_count = 100
types_per_server = 5
service_time_max = 10
monitoring_period = 10
)";
    static const std::string t3_low =
        std::string(detail::kFullScaleCommon) + std::string(detail::kLowBand) + R"(
service_type_count = 500
types_per_server = 2
service_time_max = 10
monitoring_period = 10
)";
    static const std::string t3_high =
        std::string(detail::kFullScaleCommon) + std::string(detail::kHighBand) + R"(
service_type_count = 500
types_per_server = 2
service_time_max = 10
monitoring_period = 10
)";
    static const std::string t4_low =
        std::string(detail::kFullScaleCommon) + std::string(detail::kLowBand) + R"(
service_type_count = 500
types_per_server = 5
service_time_max = 20
monitoring_period = 20
)";
    static const std::string t4_high =
        std::string(detail::kFullScaleCommon) + std::string(detail::kHighBand) + R"(
service_type_count = 500
types_per_server = 5
service_time_max = 20
monitoring_period = 20
)";
    static const std::string t5_low =
        std::string(detail::kFullScaleCommon) + std::string(detail::kLowBand) + R"(
service_type_count = 500
types_per_server = 5
service_time_max = 10
monitoring_period = 50
)";
    static const std::string t5_high =
        std::string(detail::kFullScaleCommon) + std::string(detail::kHighBand) + R"(
service_type_count = 500
types_per_server = 5
service_time_max = 10
monitoring_period = 50
)";

    static const Preset presets[] = {
        {"hc-table1-low",
         "Full-scale fleet (400,000 servers), 500 service types, 5 types per "
         "server, low initial load band (20-25%)",
         t1_low},
        {"hc-table1-high",
         "Full-scale fleet (400,000 servers), 500 service types, 5 types per "
         "server, high initial load band (80-85%)",
         t1_high},
        {"hc-table2-low",
         "Full-scale fleet with the type catalog reduced to 100 service "
         "types, low initial load band",
         t2_low},
        {"hc-table2-high",
         "Full-scale fleet with the type catalog reduced to 100 service "
         "types, high initial load band",
         t2_high},
        {"hc-table3-low",
         "Full-scale fleet with servers offering only 2 service types each, "
         "low initial load band",
         t3_low},
        {"hc-table3-high",
         "Full-scale fleet with servers offering only 2 service types each, "
         "high initial load band",
         t3_high},
        {"hc-table4-low",
         "Full-scale fleet with service times of 1-20 slots and a 20-slot "
         "monitoring interval, low initial load band",
         t4_low},
        {"hc-table4-high",
         "Full-scale fleet with service times of 1-20 slots and a 20-slot "
         "monitoring interval, high initial load band",
         t4_high},
        {"hc-table5-low",
         "Full-scale fleet with the monitoring interval stretched to 50 "
         "slots, low initial load band",
         t5_low},
        {"hc-table5-high",
         "Full-scale fleet with the monitoring interval stretched to 50 "
         "slots, high initial load band",
         t5_high},
        {"desk-low",
         "Desk-scale fleet (1 WSC x 4 cells x 10 racks x 40 servers = 1,600 "
         "servers), requests of 10-100 vCPU placed whole on single servers, "
         "low initial load band (20-25%), 30% bid threshold",
         R"(
wsc_count = 1
cells_per_wsc = 4
racks_per_cell = 10
servers_per_rack = 40
server_capacity = 100
service_type_count = 100
types_per_server = 5
intensity_min = 10
intensity_max = 100
service_time_max = 10
monitoring_period = 10
simulation_slots = 200
initial_load_min = 20
initial_load_max = 25
bid_threshold = 30
placement_mode = single-server
inter_rack_speed = 1
intra_rack_speed = 10
seed = 1
)"},
        {"desk-high",
         "Desk-scale fleet (1,600 servers), requests of 10-100 vCPU placed "
         "whole on single servers, high initial load band (80-85%), 38% bid "
         "threshold",
         R"(
wsc_count = 1
cells_per_wsc = 4
racks_per_cell = 10
servers_per_rack = 40
server_capacity = 100
service_type_count = 100
types_per_server = 5
intensity_min = 10
intensity_max = 100
service_time_max = 10
monitoring_period = 10
simulation_slots = 200
initial_load_min = 80
initial_load_max = 85
bid_threshold = 38
placement_mode = single-server
inter_rack_speed = 1
intra_rack_speed = 10
seed = 1
)"},
        {"admission-wall",
         "Near-saturated fleet (98-100% initial load) of 400 servers with "
         "tiny 1-2 vCPU requests and a 97% bid threshold no server can "
         "reach; the market admits nothing while direct control keeps "
         "placing into freed slivers",
         R"(
wsc_count = 1
cells_per_wsc = 2
racks_per_cell = 5
servers_per_rack = 40
server_capacity = 100
service_type_count = 50
types_per_server = 5
intensity_min = 1
intensity_max = 2
service_time_max = 50
monitoring_period = 10
simulation_slots = 40
initial_load_min = 98
initial_load_max = 100
bid_threshold = 97
placement_mode = single-server
inter_rack_speed = 1
intra_rack_speed = 10
seed = 1
)"},
    };
    return presets;
}

} // namespace wscsim
