#pragma once

#include <cstdint>
#include <stdexcept>

#include "wscsim/config.hpp"

namespace wscsim {

/// Coordinates of one server in the W x C x R x S hierarchy.
struct ServerAddress {
    int wsc = 0;
    int cell = 0;
    int rack = 0;
    int server = 0;
    bool operator==(const ServerAddress&) const = default;
};

/// Static shape of the simulated cloud: per-level capacities derived as
/// exact products, plus the bijection between flat server indices and
/// (wsc, cell, rack, server) coordinates.
class Topology {
public:
    Topology() = default;

    int wsc_count() const { return wsc_count_; }
    int cells_per_wsc() const { return cells_per_wsc_; }
    int racks_per_cell() const { return racks_per_cell_; }
    int servers_per_rack() const { return servers_per_rack_; }

    std::int64_t server_capacity() const { return server_capacity_; }
    std::int64_t rack_capacity() const { return rack_capacity_; }
    std::int64_t cell_capacity() const { return cell_capacity_; }
    std::int64_t wsc_capacity() const { return wsc_capacity_; }
    std::int64_t system_capacity() const { return system_capacity_; }

    std::int64_t total_servers() const { return total_servers_; }
    std::int64_t servers_per_cell() const {
        return static_cast<std::int64_t>(racks_per_cell_) * servers_per_rack_;
    }
    std::int64_t servers_per_wsc() const {
        return cells_per_wsc_ * servers_per_cell();
    }
    std::int64_t total_racks() const {
        return static_cast<std::int64_t>(wsc_count_) * cells_per_wsc_ * racks_per_cell_;
    }
    std::int64_t total_cells() const {
        return static_cast<std::int64_t>(wsc_count_) * cells_per_wsc_;
    }

    std::int64_t index_of(const ServerAddress& a) const {
        return ((static_cast<std::int64_t>(a.wsc) * cells_per_wsc_ + a.cell) *
                    racks_per_cell_ +
                a.rack) *
                   servers_per_rack_ +
               a.server;
    }

    ServerAddress address_of(std::int64_t index) const {
        ServerAddress a;
        a.server = static_cast<int>(index % servers_per_rack_);
        index /= servers_per_rack_;
        a.rack = static_cast<int>(index % racks_per_cell_);
        index /= racks_per_cell_;
        a.cell = static_cast<int>(index % cells_per_wsc_);
        a.wsc = static_cast<int>(index / cells_per_wsc_);
        return a;
    }

    // Flat ids for the controller levels.
    std::int64_t rack_id(int wsc, int cell, int rack) const {
        return (static_cast<std::int64_t>(wsc) * cells_per_wsc_ + cell) *
                   racks_per_cell_ +
               rack;
    }
    std::int64_t cell_id(int wsc, int cell) const {
        return static_cast<std::int64_t>(wsc) * cells_per_wsc_ + cell;
    }
    std::int64_t first_server_of_rack(std::int64_t rack_id) const {
        return rack_id * servers_per_rack_;
    }

    friend Topology derive_topology(const Config& cfg);

private:
    int wsc_count_ = 0, cells_per_wsc_ = 0, racks_per_cell_ = 0, servers_per_rack_ = 0;
    std::int64_t server_capacity_ = 0;
    std::int64_t rack_capacity_ = 0, cell_capacity_ = 0, wsc_capacity_ = 0,
                 system_capacity_ = 0;
    std::int64_t total_servers_ = 0;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error(std::string("capacity product overflows: ") + what);
    return out;
}

} // namespace detail

/// Derives all per-level capacities and the server count from a valid
/// config. Overflowing products are reported, never wrapped.
inline Topology derive_topology(const Config& cfg) {
    validate_config(cfg);
    Topology t;
    t.wsc_count_ = cfg.wsc_count;
    t.cells_per_wsc_ = cfg.cells_per_wsc;
    t.racks_per_cell_ = cfg.racks_per_cell;
    t.servers_per_rack_ = cfg.servers_per_rack;
    t.server_capacity_ = cfg.server_capacity;
    using detail::checked_mul;
    t.rack_capacity_ =
        checked_mul(cfg.servers_per_rack, cfg.server_capacity, "rack_capacity");
    t.cell_capacity_ =
        checked_mul(cfg.racks_per_cell, t.rack_capacity_, "cell_capacity");
    t.wsc_capacity_ =
        checked_mul(cfg.cells_per_wsc, t.cell_capacity_, "wsc_capacity");
    t.system_capacity_ =
        checked_mul(cfg.wsc_count, t.wsc_capacity_, "system_capacity");
    t.total_servers_ = checked_mul(
        checked_mul(checked_mul(static_cast<std::int64_t>(cfg.wsc_count),
                                cfg.cells_per_wsc, "total_servers"),
                    cfg.racks_per_cell, "total_servers"),
        cfg.servers_per_rack, "total_servers");
    return t;
}

} // namespace wscsim
