#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "wscsim/message_ledger.hpp"

namespace wscsim {

/// Coefficient of variation of a load sample: population standard
/// deviation divided by the mean. gamma = 0 by convention when the mean
/// is zero (an idle, perfectly even system); empty input is an error.
inline double gamma(std::span<const double> loads) {
    if (loads.empty())
        throw std::invalid_argument("gamma: empty load sample");
    double mean = 0.0;
    for (double v : loads) mean += v;
    mean /= static_cast<double>(loads.size());
    if (mean == 0.0) return 0.0;
    double var = 0.0;
    for (double v : loads) var += (v - mean) * (v - mean);
    var /= static_cast<double>(loads.size());
    return std::sqrt(var) / mean;
}

inline double gamma(const std::vector<double>& loads) {
    return gamma(std::span<const double>(loads));
}

/// Percentage of arrivals that were rejected; 0 when nothing arrived.
inline double rejection_ratio(std::uint64_t arrivals, std::uint64_t rejections) {
    if (rejections > arrivals)
        throw std::logic_error("rejection_ratio: rejections exceed arrivals");
    if (arrivals == 0) return 0.0;
    return 100.0 * static_cast<double>(rejections) / static_cast<double>(arrivals);
}

struct MsgPerReq {
    double wsc = 0.0;
    double cell = 0.0;
    double rack = 0.0;
    bool operator==(const MsgPerReq&) const = default;
};

/// Monitoring plus control messages per request, split by level.
inline MsgPerReq msg_per_req(const MessageLedger& ledger, std::uint64_t total_requests) {
    if (total_requests == 0)
        throw std::invalid_argument("msg_per_req: no requests");
    const auto n = static_cast<double>(total_requests);
    return {static_cast<double>(ledger.wsc.total()) / n,
            static_cast<double>(ledger.cell.total()) / n,
            static_cast<double>(ledger.rack.total()) / n};
}

/// Per-slot observation row. Message counters are cumulative totals
/// (monitoring + control) as of the end of the slot.
struct SlotStats {
    int slot = 0;
    double mean_load_pct = 0.0;
    double gamma = 0.0;
    std::uint64_t arrivals = 0;
    std::uint64_t placements = 0;
    std::uint64_t rejections = 0;
    std::uint64_t wsc_msgs = 0;
    std::uint64_t cell_msgs = 0;
    std::uint64_t rack_msgs = 0;
    std::uint64_t bids_outstanding = 0; // market runs only, 0 otherwise
    bool operator==(const SlotStats&) const = default;
};

/// End-of-run aggregates matching the comparison table columns. gamma is
/// reported over per-server load fractions (primary) and additionally
/// over per-WSC average loads.
struct RunSummary {
    double initial_load_pct = 0.0;
    double final_load_pct = 0.0;
    double initial_gamma = 0.0;
    double final_gamma = 0.0;
    double initial_gamma_wsc = 0.0;
    double final_gamma_wsc = 0.0;
    double rejection_ratio_pct = 0.0;
    std::uint64_t total_requests = 0;
    std::uint64_t total_placements = 0;
    std::uint64_t total_rejections = 0;
    MsgPerReq per_request;
    MessageLedger messages;
    std::uint64_t bids_placed = 0; // market runs only
    bool operator==(const RunSummary&) const = default;
};

} // namespace wscsim
