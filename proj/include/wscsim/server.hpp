#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wscsim/workload.hpp"

namespace wscsim {

struct Allocation {
    std::uint64_t request_id = 0;
    std::int64_t intensity = 0;
    int expiry_slot = 0;
};

/// Per-server (L0) state: capacity, live allocations with their expiry
/// slots, the offered service types, and the market bid flag.
/// allocated() is kept as a cached sum and never exceeds capacity.
class ServerState {
public:
    ServerState(std::int64_t capacity, std::vector<int> offered_types)
        : capacity_(capacity), offered_types_(std::move(offered_types)) {}

    std::int64_t capacity() const { return capacity_; }
    std::int64_t allocated() const { return allocated_; }
    std::int64_t free() const { return capacity_ - allocated_; }
    double load_fraction() const {
        return static_cast<double>(allocated_) / static_cast<double>(capacity_);
    }
    double load_percent() const { return 100.0 * load_fraction(); }

    bool offers(int service_type) const {
        return std::binary_search(offered_types_.begin(), offered_types_.end(),
                                  service_type);
    }
    const std::vector<int>& offered_types() const { return offered_types_; }

    void allocate(std::uint64_t request_id, std::int64_t intensity, int expiry_slot) {
        if (intensity > free())
            throw std::logic_error("capacity safety violated: allocation exceeds free capacity");
        allocations_.push_back({request_id, intensity, expiry_slot});
        allocated_ += intensity;
    }

    /// Removes every allocation due at `slot`; returns the vCPU freed.
    std::int64_t expire(int slot) {
        std::int64_t freed = 0;
        auto it = std::remove_if(allocations_.begin(), allocations_.end(),
                                 [&](const Allocation& a) {
                                     if (a.expiry_slot <= slot) {
                                         freed += a.intensity;
                                         return true;
                                     }
                                     return false;
                                 });
        allocations_.erase(it, allocations_.end());
        allocated_ -= freed;
        return freed;
    }

    const std::vector<Allocation>& allocations() const { return allocations_; }

    bool outstanding_bid() const { return outstanding_bid_; }
    void set_outstanding_bid(bool v) { outstanding_bid_ = v; }

private:
    std::int64_t capacity_ = 0;
    std::int64_t allocated_ = 0;
    std::vector<Allocation> allocations_;
    std::vector<int> offered_types_;
    bool outstanding_bid_ = false;
};

/// Builds the L0 fleet from a workload: profiles attached, residents applied.
inline std::vector<ServerState> build_servers(const Topology& topo,
                                              const Workload& workload) {
    std::vector<ServerState> servers;
    servers.reserve(static_cast<std::size_t>(topo.total_servers()));
    for (std::int64_t s = 0; s < topo.total_servers(); ++s)
        servers.emplace_back(topo.server_capacity(),
                             workload.profiles[static_cast<std::size_t>(s)].offered_types);
    // Residents live in their own id space so they never collide with
    // request ids in allocation records.
    std::uint64_t resident_id = 1ULL << 63;
    for (const auto& r : workload.residents)
        servers[static_cast<std::size_t>(r.server)].allocate(resident_id++, r.intensity,
                                                             r.expiry_slot);
    return servers;
}

} // namespace wscsim
