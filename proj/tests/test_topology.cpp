#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "wscsim/topology.hpp"

using namespace wscsim;

namespace {

Config make_cfg(int w, int c, int r, int s, std::int64_t cap) {
    Config cfg;
    cfg.wsc_count = w;
    cfg.cells_per_wsc = c;
    cfg.racks_per_cell = r;
    cfg.servers_per_rack = s;
    cfg.server_capacity = cap;
    cfg.service_type_count = 4;
    cfg.types_per_server = 2;
    cfg.intensity_min = 1;
    cfg.intensity_max = cap;
    cfg.service_time_max = 5;
    cfg.monitoring_period = 2;
    cfg.simulation_slots = 10;
    cfg.initial_load_min = 0;
    cfg.initial_load_max = 50;
    cfg.bid_threshold = 25;
    cfg.placement_mode = PlacementMode::single_server;
    cfg.inter_rack_speed = 1;
    cfg.intra_rack_speed = 10;
    cfg.seed = 1;
    return cfg;
}

} // namespace

TEST_CASE("per-level capacities are exact products", "[topology]") {
    Topology t = derive_topology(make_cfg(4, 22, 100, 40, 100));
    CHECK(t.rack_capacity() == 40 * 100);
    CHECK(t.cell_capacity() == 100 * 40 * 100);
    CHECK(t.wsc_capacity() == 22LL * 100 * 40 * 100);
    CHECK(t.system_capacity() == 4LL * 22 * 100 * 40 * 100);
    CHECK(t.total_servers() == 352000);
    CHECK(t.total_racks() == 4 * 22 * 100);
    CHECK(t.total_cells() == 4 * 22);
    CHECK(t.servers_per_cell() == 100 * 40);
    CHECK(t.servers_per_wsc() == 22 * 100 * 40);
}

TEST_CASE("a 40-server rack of 100-vCPU servers holds 4000 vCPU", "[topology]") {
    Topology t = derive_topology(make_cfg(1, 1, 1, 40, 100));
    CHECK(t.rack_capacity() == 4000);
    CHECK(t.system_capacity() == 4000);
}

TEST_CASE("index_of and address_of are mutually inverse", "[topology]") {
    // Mixed radices so digit mix-ups cannot cancel out.
    Topology t = derive_topology(make_cfg(3, 5, 7, 11, 10));
    REQUIRE(t.total_servers() == 3 * 5 * 7 * 11);
    std::set<std::int64_t> seen;
    for (int w = 0; w < 3; ++w)
        for (int c = 0; c < 5; ++c)
            for (int r = 0; r < 7; ++r)
                for (int s = 0; s < 11; ++s) {
                    ServerAddress a{w, c, r, s};
                    std::int64_t idx = t.index_of(a);
                    CHECK(idx >= 0);
                    CHECK(idx < t.total_servers());
                    CHECK(seen.insert(idx).second); // injective
                    CHECK(t.address_of(idx) == a);  // inverse
                }
    CHECK(seen.size() == static_cast<std::size_t>(t.total_servers()));
}

TEST_CASE("index layout keeps racks and cells contiguous", "[topology]") {
    Topology t = derive_topology(make_cfg(2, 3, 4, 5, 10));
    CHECK(t.index_of({0, 0, 0, 0}) == 0);
    CHECK(t.index_of({0, 0, 0, 4}) == 4);
    CHECK(t.index_of({0, 0, 1, 0}) == 5);  // next rack starts after 5 servers
    CHECK(t.index_of({0, 1, 0, 0}) == 20); // next cell after 4 racks
    CHECK(t.index_of({1, 0, 0, 0}) == 60); // next WSC after 3 cells
    CHECK(t.rack_id(0, 0, 1) == 1);
    CHECK(t.rack_id(1, 2, 3) == (1 * 3 + 2) * 4 + 3);
    CHECK(t.cell_id(1, 2) == 5);
    CHECK(t.first_server_of_rack(t.rack_id(1, 2, 3)) ==
          t.index_of({1, 2, 3, 0}));
}

TEST_CASE("overflowing capacity products are reported", "[topology]") {
    Config cfg = make_cfg(1000000, 1000000, 1000000, 1000000, 1000000);
    CHECK_THROWS_AS(derive_topology(cfg), std::overflow_error);
}

TEST_CASE("derive_topology validates its config", "[topology]") {
    Config cfg = make_cfg(0, 1, 1, 1, 10);
    CHECK_THROWS_AS(derive_topology(cfg), ConfigError);
}
