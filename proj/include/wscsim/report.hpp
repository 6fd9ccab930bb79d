#pragma once

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wscsim/config.hpp"
#include "wscsim/hierarchy_engine.hpp"
#include "wscsim/metrics.hpp"

namespace wscsim {

namespace detail {

inline std::string fmt(double v, int precision = 6) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

} // namespace detail

/// Per-slot time series. Market runs carry an extra bids_outstanding
/// column; hierarchical runs do not.
inline void write_slot_csv(std::ostream& out, const RunResult& result,
                           bool with_bids) {
    out << "slot,mean_load_pct,gamma,arrivals,placements,rejections,"
           "wsc_msgs,cell_msgs,rack_msgs";
    if (with_bids) out << ",bids_outstanding";
    out << "\n";
    for (const SlotStats& s : result.slots) {
        out << s.slot << ',' << detail::fmt(s.mean_load_pct) << ','
            << detail::fmt(s.gamma) << ',' << s.arrivals << ',' << s.placements
            << ',' << s.rejections << ',' << s.wsc_msgs << ',' << s.cell_msgs
            << ',' << s.rack_msgs;
        if (with_bids) out << ',' << s.bids_outstanding;
        out << "\n";
    }
}

inline nlohmann::json config_json(const Config& c) {
    return {
        {"wsc_count", c.wsc_count},
        {"cells_per_wsc", c.cells_per_wsc},
        {"racks_per_cell", c.racks_per_cell},
        {"servers_per_rack", c.servers_per_rack},
        {"server_capacity", c.server_capacity},
        {"service_type_count", c.service_type_count},
        {"types_per_server", c.types_per_server},
        {"intensity_min", c.intensity_min},
        {"intensity_max", c.intensity_max},
        {"service_time_max", c.service_time_max},
        {"monitoring_period", c.monitoring_period},
        {"simulation_slots", c.simulation_slots},
        {"initial_load_min", c.initial_load_min},
        {"initial_load_max", c.initial_load_max},
        {"bid_threshold", c.bid_threshold},
        {"placement_mode", to_string(c.placement_mode)},
        {"inter_rack_speed", c.inter_rack_speed},
        {"intra_rack_speed", c.intra_rack_speed},
        {"seed", c.seed},
    };
}

inline nlohmann::json summary_json(const std::string& mechanism,
                                   const Config& cfg, const RunSummary& s) {
    nlohmann::json j = {
        {"mechanism", mechanism},
        {"config", config_json(cfg)},
        {"initial_load_pct", s.initial_load_pct},
        {"final_load_pct", s.final_load_pct},
        {"initial_gamma", s.initial_gamma},
        {"final_gamma", s.final_gamma},
        {"initial_gamma_wsc", s.initial_gamma_wsc},
        {"final_gamma_wsc", s.final_gamma_wsc},
        {"rejection_ratio_pct", s.rejection_ratio_pct},
        {"total_requests", s.total_requests},
        {"total_placements", s.total_placements},
        {"total_rejections", s.total_rejections},
        {"msg_per_req",
         {{"wsc", s.per_request.wsc},
          {"cell", s.per_request.cell},
          {"rack", s.per_request.rack}}},
        {"messages",
         {{"wsc",
           {{"monitoring", s.messages.wsc.monitoring},
            {"control", s.messages.wsc.control}}},
          {"cell",
           {{"monitoring", s.messages.cell.monitoring},
            {"control", s.messages.cell.control}}},
          {"rack",
           {{"monitoring", s.messages.rack.monitoring},
            {"control", s.messages.rack.control}}}}},
    };
    if (mechanism == "market") j["bids_placed"] = s.bids_placed;
    return j;
}

inline void write_summary_json(std::ostream& out, const std::string& mechanism,
                               const Config& cfg, const RunSummary& s) {
    out << summary_json(mechanism, cfg, s).dump(2) << "\n";
}

/// Side-by-side table for a shared-workload run of both mechanisms.
inline void write_comparison(std::ostream& out, const RunSummary& hier,
                             const RunSummary& market) {
    auto row = [&out](const std::string& label, const std::string& a,
                      const std::string& b) {
        out << std::left << std::setw(28) << label << std::right
            << std::setw(16) << a << std::setw(16) << b << "\n";
    };
    auto num = [](double v) { return detail::fmt(v, 4); };
    out << std::left << std::setw(28) << "metric" << std::right << std::setw(16)
        << "hierarchical" << std::setw(16) << "market" << "\n";
    out << std::string(60, '-') << "\n";
    row("initial load %", num(hier.initial_load_pct), num(market.initial_load_pct));
    row("final load %", num(hier.final_load_pct), num(market.final_load_pct));
    row("initial gamma (servers)", num(hier.initial_gamma), num(market.initial_gamma));
    row("final gamma (servers)", num(hier.final_gamma), num(market.final_gamma));
    row("final gamma (WSCs)", num(hier.final_gamma_wsc), num(market.final_gamma_wsc));
    row("rejection ratio %", num(hier.rejection_ratio_pct),
        num(market.rejection_ratio_pct));
    row("requests", std::to_string(hier.total_requests),
        std::to_string(market.total_requests));
    row("placements", std::to_string(hier.total_placements),
        std::to_string(market.total_placements));
    row("msg/req WSC level", num(hier.per_request.wsc), num(market.per_request.wsc));
    row("msg/req cell level", num(hier.per_request.cell), num(market.per_request.cell));
    row("msg/req rack level", num(hier.per_request.rack), num(market.per_request.rack));
    row("bids placed", "-", std::to_string(market.bids_placed));
}

} // namespace wscsim
