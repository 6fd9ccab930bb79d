#pragma once

#include <cstdint>

namespace wscsim {

struct LevelCounters {
    std::uint64_t monitoring = 0;
    std::uint64_t control = 0;
    std::uint64_t total() const { return monitoring + control; }
    bool operator==(const LevelCounters&) const = default;
};

/// Message accounting bucketed by hierarchy level. Counters only grow
/// within a run.
struct MessageLedger {
    LevelCounters wsc;
    LevelCounters cell;
    LevelCounters rack;
    bool operator==(const MessageLedger&) const = default;

    std::uint64_t total_monitoring() const {
        return wsc.monitoring + cell.monitoring + rack.monitoring;
    }
    std::uint64_t total_control() const {
        return wsc.control + cell.control + rack.control;
    }
    std::uint64_t total() const { return total_monitoring() + total_control(); }
};

} // namespace wscsim
