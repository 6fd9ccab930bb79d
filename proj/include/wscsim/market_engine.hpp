#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "wscsim/config.hpp"
#include "wscsim/hierarchy_engine.hpp" // PlacementResult, RequestOutcome, RunResult
#include "wscsim/message_ledger.hpp"
#include "wscsim/metrics.hpp"
#include "wscsim/server.hpp"
#include "wscsim/topology.hpp"
#include "wscsim/workload.hpp"

namespace wscsim {

/// A server's standing offer: its service types and the capacity it had
/// free when the bid was placed. The recorded capacity is advisory;
/// eligibility is re-checked against the bidder's current free capacity
/// at match time.
struct Bid {
    std::int64_t server = 0;
    int placed_slot = 0;
    std::int64_t available_at_placement = 0;
};

/// Market mechanism: threshold-gated persistent bids collected per WSC,
/// matched FIFO-first-fit against incoming requests. There is no
/// monitoring; a request that finds no usable bid is rejected, which is
/// the implicit admission control.
///
/// Message charging: one rack-level message per bid placed, one WSC-level
/// plus one cell-level message per matched request. Rejections are free.
class MarketEngine {
public:
    MarketEngine(const Config& cfg, const Workload& workload)
        : cfg_(cfg),
          topo_(derive_topology(cfg)),
          workload_(&workload),
          servers_(build_servers(topo_, workload)),
          boards_(static_cast<std::size_t>(cfg.wsc_count)) {}

    const Topology& topology() const { return topo_; }
    const std::vector<ServerState>& servers() const { return servers_; }
    const MessageLedger& ledger() const { return ledger_; }
    const std::vector<Bid>& board(int wsc) const {
        return boards_[static_cast<std::size_t>(wsc)];
    }
    std::uint64_t bids_placed() const { return bids_placed_; }
    std::uint64_t bids_outstanding() const {
        std::uint64_t n = 0;
        for (const auto& b : boards_) n += b.size();
        return n;
    }

    std::int64_t expire_allocations(int slot) {
        std::int64_t freed = 0;
        for (auto& s : servers_) freed += s.expire(slot);
        return freed;
    }

    /// Start-of-slot bidding: every server with free capacity of at least
    /// tau percent and no outstanding bid places one. Bids persist until
    /// matched, so a server never holds more than one.
    void collect_bids(int slot) {
        for (std::size_t s = 0; s < servers_.size(); ++s) {
            ServerState& srv = servers_[s];
            if (srv.outstanding_bid()) continue;
            if (static_cast<double>(srv.free()) * 100.0 <
                cfg_.bid_threshold * static_cast<double>(srv.capacity()))
                continue;
            const int wsc = static_cast<int>(static_cast<std::int64_t>(s) /
                                             topo_.servers_per_wsc());
            boards_[static_cast<std::size_t>(wsc)].push_back(
                {static_cast<std::int64_t>(s), slot, srv.free()});
            srv.set_outstanding_bid(true);
            bids_placed_ += 1;
            ledger_.rack.control += 1; // server -> collection traffic
        }
    }

    /// Scans the WSC's board in placement order (placed_slot, then server
    /// index) and serves the request from the first usable bid; in
    /// rack-split mode from the first rack whose outstanding bids cover
    /// the intensity together. Consumed bids leave the board.
    PlacementResult match_request(const ServiceRequest& req, int wsc) {
        auto& board = boards_[static_cast<std::size_t>(wsc)];
        const int expiry = req.arrival_slot + req.service_time;

        if (cfg_.placement_mode == PlacementMode::single_server) {
            for (std::size_t i = 0; i < board.size(); ++i) {
                ServerState& srv = servers_[static_cast<std::size_t>(board[i].server)];
                if (!srv.offers(req.service_type) || srv.free() < req.intensity)
                    continue;
                srv.allocate(req.id, req.intensity, expiry);
                srv.set_outstanding_bid(false);
                const std::int64_t server = board[i].server;
                board.erase(board.begin() + static_cast<std::ptrdiff_t>(i));
                charge_match();
                return {true, {{server, req.intensity}}};
            }
            return {};
        }

        // rack-split: the anchor bid pins the rack, further bids from the
        // same rack are combined in board order until the intensity is
        // covered. All-or-nothing per rack.
        std::vector<std::int64_t> tried_racks;
        for (std::size_t a = 0; a < board.size(); ++a) {
            const ServerState& anchor = servers_[static_cast<std::size_t>(board[a].server)];
            if (!anchor.offers(req.service_type) || anchor.free() <= 0) continue;
            const std::int64_t rack = board[a].server / cfg_.servers_per_rack;
            if (std::find(tried_racks.begin(), tried_racks.end(), rack) !=
                tried_racks.end())
                continue;
            tried_racks.push_back(rack);

            std::int64_t remaining = req.intensity;
            std::vector<std::size_t> consumed;
            std::vector<PlacementShare> shares;
            for (std::size_t i = a; i < board.size() && remaining > 0; ++i) {
                if (board[i].server / cfg_.servers_per_rack != rack) continue;
                ServerState& srv = servers_[static_cast<std::size_t>(board[i].server)];
                if (!srv.offers(req.service_type) || srv.free() <= 0) continue;
                const std::int64_t share = std::min(srv.free(), remaining);
                shares.push_back({board[i].server, share});
                consumed.push_back(i);
                remaining -= share;
            }
            if (remaining > 0) continue; // rack cannot cover it, try next anchor

            for (const auto& sh : shares) {
                ServerState& srv = servers_[static_cast<std::size_t>(sh.server)];
                srv.allocate(req.id, sh.share, expiry);
                srv.set_outstanding_bid(false);
            }
            for (auto it = consumed.rbegin(); it != consumed.rend(); ++it)
                board.erase(board.begin() + static_cast<std::ptrdiff_t>(*it));
            charge_match();
            return {true, std::move(shares)};
        }
        return {}; // no usable bid: implicit admission control
    }

    RunResult run() {
        RunResult res;
        RunSummary& sum = res.summary;
        std::tie(sum.initial_load_pct, sum.initial_gamma, sum.initial_gamma_wsc) =
            load_statistics();
        for (int slot = 0; slot < cfg_.simulation_slots; ++slot) {
            expire_allocations(slot);
            collect_bids(slot);

            const auto& batch = workload_->batches[static_cast<std::size_t>(slot)];
            const auto& assign = workload_->wsc_assignment[static_cast<std::size_t>(slot)];
            std::uint64_t placed = 0;
            for (std::size_t i = 0; i < batch.size(); ++i) {
                PlacementResult r = match_request(batch[i], assign[i]);
                placed += r.placed ? 1 : 0;
                res.outcomes.push_back(
                    {batch[i].id, slot, r.placed, std::move(r.shares)});
            }
            sum.total_requests += batch.size();
            sum.total_placements += placed;
            sum.total_rejections += batch.size() - placed;
            verify_capacity_safety();
            verify_bid_invariants();

            auto [mean_pct, g_srv, g_wsc] = load_statistics();
            res.slots.push_back({slot, mean_pct, g_srv, batch.size(), placed,
                                 batch.size() - placed, ledger_.wsc.total(),
                                 ledger_.cell.total(), ledger_.rack.total(),
                                 bids_outstanding()});
        }
        auto [mean_pct, g_srv, g_wsc] = load_statistics();
        sum.final_load_pct = mean_pct;
        sum.final_gamma = g_srv;
        sum.final_gamma_wsc = g_wsc;
        sum.rejection_ratio_pct =
            rejection_ratio(sum.total_requests, sum.total_rejections);
        sum.messages = ledger_;
        sum.bids_placed = bids_placed_;
        if (sum.total_requests > 0)
            sum.per_request = msg_per_req(ledger_, sum.total_requests);
        return res;
    }

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

    void verify_bid_invariants() const {
        std::vector<bool> on_board(servers_.size(), false);
        for (const auto& board : boards_) {
            int last_slot = -1;
            std::int64_t last_server = -1;
            for (const auto& b : board) {
                const auto s = static_cast<std::size_t>(b.server);
                if (on_board[s])
                    throw std::logic_error("more than one outstanding bid for a server");
                on_board[s] = true;
                if (b.placed_slot < last_slot ||
                    (b.placed_slot == last_slot && b.server <= last_server))
                    throw std::logic_error("bid board ordering violated");
                last_slot = b.placed_slot;
                last_server = b.server;
            }
        }
        for (std::size_t s = 0; s < servers_.size(); ++s)
            if (servers_[s].outstanding_bid() != on_board[s])
                throw std::logic_error("outstanding-bid flag out of sync with board");
    }

private:
    void charge_match() {
        ledger_.wsc.control += 1;
        ledger_.cell.control += 1;
    }

    Config cfg_;
    Topology topo_;
    const Workload* workload_;
    std::vector<ServerState> servers_;
    std::vector<std::vector<Bid>> boards_;
    MessageLedger ledger_;
    std::uint64_t bids_placed_ = 0;
};

inline RunResult run_market(const Config& cfg, const Workload& workload) {
    MarketEngine engine(cfg, workload);
    return engine.run();
}

} // namespace wscsim
