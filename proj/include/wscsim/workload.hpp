#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wscsim/config.hpp"
#include "wscsim/topology.hpp"

namespace wscsim {

/// One service request: what is asked for (type), for how long (slots)
/// and how much (vCPU).
struct ServiceRequest {
    std::uint64_t id = 0;
    int service_type = 0;
    int service_time = 0;       // slots, in 1..service_time_max
    std::int64_t intensity = 0; // vCPU, in intensity_min..intensity_max
    int arrival_slot = 0;
    bool operator==(const ServiceRequest&) const = default;
};

/// The service types one server offers.
struct ServerProfile {
    std::int64_t server = 0;
    std::vector<int> offered_types; // sorted, types_per_server distinct entries
    bool operator==(const ServerProfile&) const = default;
};

/// Synthetic work resident on a server before slot 0. Residents drain
/// naturally: the allocation expires at expiry_slot like any placed request.
struct ResidentAllocation {
    std::int64_t server = 0;
    int service_type = 0;
    std::int64_t intensity = 0;
    int expiry_slot = 0; // in 1..service_time_max
    bool operator==(const ResidentAllocation&) const = default;
};

/// A fully materialized run input. Both engines consume the same Workload,
/// so a comparison between mechanisms sees identical profiles, identical
/// initial state and an identical request stream.
struct Workload {
    std::vector<ServerProfile> profiles;            // one per server, by index
    std::vector<ResidentAllocation> residents;
    std::vector<std::vector<ServiceRequest>> batches; // one batch per slot
    std::vector<std::vector<int>> wsc_assignment;     // parallel to batches

    std::uint64_t total_requests() const {
        std::uint64_t n = 0;
        for (const auto& b : batches) n += b.size();
        return n;
    }
};

namespace detail {

// Sub-seed derivation so profiles, initial load, batches and WSC
// assignment are independently reproducible streams of one run seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(seed + 0x100 * stream));
}

} // namespace detail

/// Gives every server types_per_server distinct service types, sampled
/// uniformly without replacement. Deterministic given the rng state.
inline std::vector<ServerProfile> assign_server_profiles(const Topology& topo,
                                                         const Config& cfg,
                                                         std::mt19937_64& rng) {
    std::vector<ServerProfile> profiles(topo.total_servers());
    std::vector<int> all_types(static_cast<std::size_t>(cfg.service_type_count));
    std::iota(all_types.begin(), all_types.end(), 0);
    for (std::int64_t s = 0; s < topo.total_servers(); ++s) {
        profiles[s].server = s;
        profiles[s].offered_types.reserve(cfg.types_per_server);
        std::sample(all_types.begin(), all_types.end(),
                    std::back_inserter(profiles[s].offered_types),
                    cfg.types_per_server, rng);
        std::sort(profiles[s].offered_types.begin(), profiles[s].offered_types.end());
    }
    return profiles;
}

/// Seeds each server into the configured initial load band. The target
/// load is drawn per server inside the band and covered exactly by
/// synthetic resident allocations whose types come from the hosting
/// server's profile and whose remaining service times are uniform in
/// 1..service_time_max, so they drain naturally during the run.
inline std::vector<ResidentAllocation> seed_initial_load(
    const Topology& topo, const Config& cfg,
    const std::vector<ServerProfile>& profiles, std::mt19937_64& rng) {
    const std::int64_t cap = topo.server_capacity();
    const auto lo = static_cast<std::int64_t>(
        std::ceil(cfg.initial_load_min / 100.0 * static_cast<double>(cap)));
    const auto hi = static_cast<std::int64_t>(
        std::floor(cfg.initial_load_max / 100.0 * static_cast<double>(cap)));
    if (lo > hi)
        throw std::invalid_argument(
            "initial load band [" + std::to_string(cfg.initial_load_min) + ", " +
            std::to_string(cfg.initial_load_max) +
            "]% admits no whole-vCPU target on capacity " + std::to_string(cap));

    std::vector<ResidentAllocation> residents;
    if (hi == 0) return residents; // empty band, all servers start idle

    std::uniform_int_distribution<std::int64_t> target_dist(lo, hi);
    std::uniform_int_distribution<std::int64_t> chunk_dist(cfg.intensity_min,
                                                           cfg.intensity_max);
    std::uniform_int_distribution<int> time_dist(1, cfg.service_time_max);
    for (std::int64_t s = 0; s < topo.total_servers(); ++s) {
        const auto& types = profiles[s].offered_types;
        std::uniform_int_distribution<std::size_t> type_pick(0, types.size() - 1);
        std::int64_t remaining = target_dist(rng);
        while (remaining > 0) {
            std::int64_t chunk = std::min(chunk_dist(rng), remaining);
            residents.push_back({s, types[type_pick(rng)], chunk, time_dist(rng)});
            remaining -= chunk;
        }
    }
    return residents;
}

/// Arrivals per slot, calibrated so offered work balances departing work
/// at the midpoint of the initial load band.
inline std::int64_t batch_size_per_slot(const Topology& topo, const Config& cfg) {
    const double rho = (cfg.initial_load_min + cfg.initial_load_max) / 200.0;
    const double mean_intensity =
        (static_cast<double>(cfg.intensity_min) + static_cast<double>(cfg.intensity_max)) / 2.0;
    const double mean_time = (1.0 + cfg.service_time_max) / 2.0;
    return std::llround(rho * static_cast<double>(topo.system_capacity()) /
                        (mean_intensity * mean_time));
}

/// Draws one slot's batch. Request fields are uniform over their
/// configured ranges; ids continue from next_id and stay monotone.
inline std::vector<ServiceRequest> next_batch(int slot, const Topology& topo,
                                              const Config& cfg,
                                              std::mt19937_64& rng,
                                              std::uint64_t& next_id) {
    std::uniform_int_distribution<int> type_dist(0, cfg.service_type_count - 1);
    std::uniform_int_distribution<int> time_dist(1, cfg.service_time_max);
    std::uniform_int_distribution<std::int64_t> intensity_dist(cfg.intensity_min,
                                                               cfg.intensity_max);
    const std::int64_t n = batch_size_per_slot(topo, cfg);
    std::vector<ServiceRequest> batch;
    batch.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        batch.push_back({next_id++, type_dist(rng), time_dist(rng),
                         intensity_dist(rng), slot});
    return batch;
}

/// Generates the complete, reproducible input of one run from (cfg, seed).
inline Workload generate_workload(const Topology& topo, const Config& cfg) {
    Workload w;
    auto profile_rng = detail::stream_rng(cfg.seed, 1);
    auto load_rng = detail::stream_rng(cfg.seed, 2);
    auto batch_rng = detail::stream_rng(cfg.seed, 3);
    auto assign_rng = detail::stream_rng(cfg.seed, 4);

    w.profiles = assign_server_profiles(topo, cfg, profile_rng);
    w.residents = seed_initial_load(topo, cfg, w.profiles, load_rng);

    std::uniform_int_distribution<int> wsc_dist(0, cfg.wsc_count - 1);
    std::uint64_t next_id = 0;
    w.batches.resize(cfg.simulation_slots);
    w.wsc_assignment.resize(cfg.simulation_slots);
    for (int slot = 0; slot < cfg.simulation_slots; ++slot) {
        w.batches[slot] = next_batch(slot, topo, cfg, batch_rng, next_id);
        w.wsc_assignment[slot].reserve(w.batches[slot].size());
        for (std::size_t i = 0; i < w.batches[slot].size(); ++i)
            w.wsc_assignment[slot].push_back(wsc_dist(assign_rng));
    }
    return w;
}

/// Trace export: one request per line, `id,arrival_slot,type,time,intensity`.
inline void write_trace_csv(std::ostream& out, const Workload& w) {
    out << "id,arrival_slot,type,time,intensity\n";
    for (const auto& batch : w.batches)
        for (const auto& r : batch)
            out << r.id << ',' << r.arrival_slot << ',' << r.service_type << ','
                << r.service_time << ',' << r.intensity << '\n';
}

/// Trace import, the inverse of write_trace_csv. Returns batches keyed by
/// arrival slot; profiles, residents and WSC assignment are not part of
/// the trace format and must come from the config seed.
inline std::vector<std::vector<ServiceRequest>> read_trace_csv(std::istream& in,
                                                               int simulation_slots) {
    std::vector<std::vector<ServiceRequest>> batches(simulation_slots);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("trace: missing header line");
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ServiceRequest r;
        char comma = 0;
        std::istringstream row(line);
        if (!(row >> r.id >> comma >> r.arrival_slot >> comma >> r.service_type >>
              comma >> r.service_time >> comma >> r.intensity))
            throw std::invalid_argument("trace: malformed line " +
                                        std::to_string(line_no));
        if (r.arrival_slot < 0 || r.arrival_slot >= simulation_slots)
            throw std::invalid_argument("trace: arrival_slot out of range on line " +
                                        std::to_string(line_no));
        batches[r.arrival_slot].push_back(r);
    }
    return batches;
}

} // namespace wscsim
