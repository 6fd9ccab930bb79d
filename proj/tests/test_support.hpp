#pragma once

// Shared builders for engine tests: every piece of a Workload can be laid
// out by hand so traces are enumerable on paper.

#include <vector>

#include "wscsim/config.hpp"
#include "wscsim/workload.hpp"

namespace testsupport {

struct ConfigSpec {
    int w = 1, c = 1, r = 1, s = 1;
    std::int64_t cap = 10;
    int types = 4;
    int types_per_server = 2;
    std::int64_t imin = 1, imax = 10;
    int tmax = 5;
    int period = 1;
    int slots = 1;
    double tau = 50;
    wscsim::PlacementMode mode = wscsim::PlacementMode::single_server;
    std::uint64_t seed = 1;
};

inline wscsim::Config make_config(const ConfigSpec& s) {
    wscsim::Config c;
    c.wsc_count = s.w;
    c.cells_per_wsc = s.c;
    c.racks_per_cell = s.r;
    c.servers_per_rack = s.s;
    c.server_capacity = s.cap;
    c.service_type_count = s.types;
    c.types_per_server = s.types_per_server;
    c.intensity_min = s.imin;
    c.intensity_max = s.imax;
    c.service_time_max = s.tmax;
    c.monitoring_period = s.period;
    c.simulation_slots = s.slots;
    c.initial_load_min = 0;
    c.initial_load_max = 0;
    c.bid_threshold = s.tau;
    c.placement_mode = s.mode;
    c.inter_rack_speed = 1;
    c.intra_rack_speed = 10;
    c.seed = s.seed;
    return c;
}

// Profiles from a type list per server, index order.
inline std::vector<wscsim::ServerProfile> profiles(
    std::vector<std::vector<int>> types) {
    std::vector<wscsim::ServerProfile> out(types.size());
    for (std::size_t i = 0; i < types.size(); ++i) {
        out[i].server = static_cast<std::int64_t>(i);
        out[i].offered_types = std::move(types[i]);
    }
    return out;
}

// Gives all `n` servers the same offered types.
inline std::vector<wscsim::ServerProfile> uniform_profiles(
    std::size_t n, std::vector<int> types) {
    return profiles(std::vector<std::vector<int>>(n, types));
}

inline wscsim::ServiceRequest req(std::uint64_t id, int slot, int type, int time,
                                  std::int64_t intensity) {
    return {id, type, time, intensity, slot};
}

// Workload with every request assigned to WSC 0 (single-WSC tests).
inline wscsim::Workload workload(
    std::vector<wscsim::ServerProfile> profs,
    std::vector<wscsim::ResidentAllocation> residents,
    std::vector<std::vector<wscsim::ServiceRequest>> batches) {
    wscsim::Workload w;
    w.profiles = std::move(profs);
    w.residents = std::move(residents);
    w.wsc_assignment.resize(batches.size());
    for (std::size_t i = 0; i < batches.size(); ++i)
        w.wsc_assignment[i].assign(batches[i].size(), 0);
    w.batches = std::move(batches);
    return w;
}

} // namespace testsupport
