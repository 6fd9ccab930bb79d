#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "wscsim/config.hpp"
#include "wscsim/message_ledger.hpp"
#include "wscsim/metrics.hpp"
#include "wscsim/server.hpp"
#include "wscsim/topology.hpp"
#include "wscsim/workload.hpp"

namespace wscsim {

struct PlacementShare {
    std::int64_t server = 0;
    std::int64_t share = 0;
    bool operator==(const PlacementShare&) const = default;
};

/// Outcome of routing or matching one request. Rejection is a result,
/// not an error.
struct PlacementResult {
    bool placed = false;
    std::vector<PlacementShare> shares;
};

struct RequestOutcome {
    std::uint64_t id = 0;
    int slot = 0;
    bool placed = false;
    std::vector<PlacementShare> shares;
    bool operator==(const RequestOutcome&) const = default;
};

struct RunResult {
    RunSummary summary;
    std::vector<SlotStats> slots;
    std::vector<RequestOutcome> outcomes;
};

/// Distributed hierarchical control: servers report load up the tree on a
/// monitoring period; requests are routed down the tree lowest-reported-
/// load-first with redirect on reject. Routing consults only the last
/// reported snapshots, never live loads, so decisions between monitoring
/// ticks work on stale data by design.
///
/// Message charging: one WSC-level message per cell attempted, one
/// cell-level message per rack attempted, one rack-level message per
/// server probed; monitoring ticks charge one message per reporting unit
/// at the level it reports into.
class HierarchyEngine {
public:
    HierarchyEngine(const Config& cfg, const Workload& workload)
        : cfg_(cfg),
          topo_(derive_topology(cfg)),
          workload_(&workload),
          servers_(build_servers(topo_, workload)),
          server_reported_(servers_.size(), 0.0),
          rack_reported_(static_cast<std::size_t>(topo_.total_racks()), 0.0),
          cell_reported_(static_cast<std::size_t>(topo_.total_cells()), 0.0) {}

    const Topology& topology() const { return topo_; }
    const std::vector<ServerState>& servers() const { return servers_; }
    const MessageLedger& ledger() const { return ledger_; }
    double reported_cell_load(std::int64_t cell_id) const {
        return cell_reported_[static_cast<std::size_t>(cell_id)];
    }
    double reported_rack_load(std::int64_t rack_id) const {
        return rack_reported_[static_cast<std::size_t>(rack_id)];
    }
    double reported_server_load(std::int64_t server) const {
        return server_reported_[static_cast<std::size_t>(server)];
    }

    /// Start-of-slot cleanup: drops every allocation due at `slot` and
    /// returns the total vCPU freed. Costs no messages.
    std::int64_t expire_allocations(int slot) {
        std::int64_t freed = 0;
        for (auto& s : servers_) freed += s.expire(slot);
        return freed;
    }

    bool monitoring_due(int slot) const { return slot % cfg_.monitoring_period == 0; }

    /// Bottom-up refresh of every load snapshot. Each server reports to
    /// its rack controller, each rack aggregate goes to its cell, each
    /// cell aggregate to its WSC.
    void monitoring_tick() {
        for (std::size_t s = 0; s < servers_.size(); ++s)
            server_reported_[s] = servers_[s].load_percent();
        const int S = topo_.servers_per_rack();
        for (std::int64_t r = 0; r < topo_.total_racks(); ++r) {
            double sum = 0.0;
            const std::int64_t base = r * S;
            for (int i = 0; i < S; ++i)
                sum += server_reported_[static_cast<std::size_t>(base + i)];
            rack_reported_[static_cast<std::size_t>(r)] = sum / S;
        }
        const int R = topo_.racks_per_cell();
        for (std::int64_t c = 0; c < topo_.total_cells(); ++c) {
            double sum = 0.0;
            const std::int64_t base = c * R;
            for (int i = 0; i < R; ++i)
                sum += rack_reported_[static_cast<std::size_t>(base + i)];
            cell_reported_[static_cast<std::size_t>(c)] = sum / R;
        }
        ledger_.rack.monitoring += static_cast<std::uint64_t>(topo_.total_servers());
        ledger_.cell.monitoring += static_cast<std::uint64_t>(topo_.total_racks());
        ledger_.wsc.monitoring += static_cast<std::uint64_t>(topo_.total_cells());
    }

    /// Routes one request inside its assigned WSC. Candidates at every
    /// level are visited in ascending last-reported load, ties broken by
    /// lowest index. A request its WSC cannot satisfy is rejected; it
    /// does not migrate to another WSC.
    PlacementResult route_request(const ServiceRequest& req, int wsc) {
        const int expiry = req.arrival_slot + req.service_time;
        for (int cell : order_by_reported(cell_reported_, topo_.cell_id(wsc, 0),
                                          topo_.cells_per_wsc())) {
            ledger_.wsc.control += 1; // WSC dispatches the request to a cell
            const std::int64_t cell_id = topo_.cell_id(wsc, cell);
            for (int rack : order_by_reported(rack_reported_,
                                              cell_id * topo_.racks_per_cell(),
                                              topo_.racks_per_cell())) {
                ledger_.cell.control += 1; // cell dispatches to a rack
                const std::int64_t rack_id = cell_id * topo_.racks_per_cell() + rack;
                PlacementResult r = probe_rack(req, rack_id, expiry);
                if (r.placed) return r;
            }
        }
        return {};
    }

    /// Full run over the workload given at construction.
    RunResult run() {
        RunResult res;
        RunSummary& sum = res.summary;
        std::tie(sum.initial_load_pct, sum.initial_gamma, sum.initial_gamma_wsc) =
            load_statistics();
        for (int slot = 0; slot < cfg_.simulation_slots; ++slot) {
            expire_allocations(slot);
            if (monitoring_due(slot)) monitoring_tick();

            const auto& batch = workload_->batches[static_cast<std::size_t>(slot)];
            const auto& assign = workload_->wsc_assignment[static_cast<std::size_t>(slot)];
            std::uint64_t placed = 0;
            for (std::size_t i = 0; i < batch.size(); ++i) {
                PlacementResult r = route_request(batch[i], assign[i]);
                placed += r.placed ? 1 : 0;
                res.outcomes.push_back(
                    {batch[i].id, slot, r.placed, std::move(r.shares)});
            }
            sum.total_requests += batch.size();
            sum.total_placements += placed;
            sum.total_rejections += batch.size() - placed;
            verify_capacity_safety();

            auto [mean_pct, g_srv, g_wsc] = load_statistics();
            res.slots.push_back({slot, mean_pct, g_srv, batch.size(), placed,
                                 batch.size() - placed, ledger_.wsc.total(),
                                 ledger_.cell.total(), ledger_.rack.total(), 0});
        }
        auto [mean_pct, g_srv, g_wsc] = load_statistics();
        sum.final_load_pct = mean_pct;
        sum.final_gamma = g_srv;
        sum.final_gamma_wsc = g_wsc;
        sum.rejection_ratio_pct =
            rejection_ratio(sum.total_requests, sum.total_rejections);
        sum.messages = ledger_;
        if (sum.total_requests > 0)
            sum.per_request = msg_per_req(ledger_, sum.total_requests);
        return res;
    }

    /// (mean load %, gamma over servers, gamma over WSC averages).
    std::tuple<double, double, double> load_statistics() const {
        std::vector<double> fractions(servers_.size());
        for (std::size_t i = 0; i < servers_.size(); ++i)
            fractions[i] = servers_[i].load_fraction();
        const double mean_pct =
            100.0 * std::accumulate(fractions.begin(), fractions.end(), 0.0) /
            static_cast<double>(fractions.size());
        std::vector<double> wsc_fraction(static_cast<std::size_t>(topo_.wsc_count()), 0.0);
        const std::int64_t per_wsc = topo_.servers_per_wsc();
        for (std::size_t i = 0; i < servers_.size(); ++i)
            wsc_fraction[static_cast<std::size_t>(static_cast<std::int64_t>(i) / per_wsc)] +=
                fractions[i] / static_cast<double>(per_wsc);
        return {mean_pct, gamma(fractions), gamma(wsc_fraction)};
    }

    void verify_capacity_safety() const {
        for (const auto& s : servers_) {
            std::int64_t sum = 0;
            for (const auto& a : s.allocations()) sum += a.intensity;
            if (sum != s.allocated() || s.allocated() < 0 || s.allocated() > s.capacity())
                throw std::logic_error("capacity safety violated");
        }
    }

private:
    // Children of one controller ordered by ascending reported load,
    // ties by lowest index.
    std::vector<int> order_by_reported(const std::vector<double>& reported,
                                       std::int64_t first, int count) const {
        std::vector<int> idx(static_cast<std::size_t>(count));
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            const double la = reported[static_cast<std::size_t>(first + a)];
            const double lb = reported[static_cast<std::size_t>(first + b)];
            return la != lb ? la < lb : a < b;
        });
        return idx;
    }

    // Probes the servers of one rack in ascending reported load. One
    // rack-level message per server probed. In single-server mode the
    // first server that matches the type and fits the full intensity
    // accepts; in rack-split mode type-matching servers contribute free
    // capacity until the intensity is covered, and nothing is committed
    // unless the rack covers all of it.
    PlacementResult probe_rack(const ServiceRequest& req, std::int64_t rack_id,
                               int expiry) {
        const std::int64_t base = topo_.first_server_of_rack(rack_id);
        std::vector<int> order =
            order_by_reported(server_reported_, base, topo_.servers_per_rack());
        if (cfg_.placement_mode == PlacementMode::single_server) {
            for (int i : order) {
                ledger_.rack.control += 1;
                ServerState& srv = servers_[static_cast<std::size_t>(base + i)];
                if (srv.offers(req.service_type) && srv.free() >= req.intensity) {
                    srv.allocate(req.id, req.intensity, expiry);
                    return {true, {{base + i, req.intensity}}};
                }
            }
            return {};
        }
        std::int64_t remaining = req.intensity;
        std::vector<PlacementShare> shares;
        for (int i : order) {
            ledger_.rack.control += 1;
            ServerState& srv = servers_[static_cast<std::size_t>(base + i)];
            if (!srv.offers(req.service_type) || srv.free() <= 0) continue;
            const std::int64_t share = std::min(srv.free(), remaining);
            shares.push_back({base + i, share});
            remaining -= share;
            if (remaining == 0) {
                for (const auto& sh : shares)
                    servers_[static_cast<std::size_t>(sh.server)].allocate(
                        req.id, sh.share, expiry);
                return {true, std::move(shares)};
            }
        }
        return {}; // rack exhausted, nothing committed
    }

    Config cfg_;
    Topology topo_;
    const Workload* workload_;
    std::vector<ServerState> servers_;
    std::vector<double> server_reported_;
    std::vector<double> rack_reported_;
    std::vector<double> cell_reported_;
    MessageLedger ledger_;
};

inline RunResult run_hierarchical(const Config& cfg, const Workload& workload) {
    HierarchyEngine engine(cfg, workload);
    return engine.run();
}

} // namespace wscsim
