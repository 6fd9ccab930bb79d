#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "wscsim/topology.hpp"
#include "wscsim/workload.hpp"

using namespace wscsim;
using Catch::Matchers::WithinRel;

namespace {

Config stats_cfg() {
    // Shaped so one workload yields > 10^6 requests quickly: few servers,
    // huge per-server capacity, high load band.
    Config cfg;
    cfg.wsc_count = 1;
    cfg.cells_per_wsc = 1;
    cfg.racks_per_cell = 1;
    cfg.servers_per_rack = 40;
    cfg.server_capacity = 1000000;
    cfg.service_type_count = 100;
    cfg.types_per_server = 5;
    cfg.intensity_min = 10;
    cfg.intensity_max = 800;
    cfg.service_time_max = 10;
    cfg.monitoring_period = 10;
    cfg.simulation_slots = 68;
    cfg.initial_load_min = 80;
    cfg.initial_load_max = 85;
    cfg.bid_threshold = 15;
    cfg.placement_mode = PlacementMode::single_server;
    cfg.inter_rack_speed = 1;
    cfg.intra_rack_speed = 10;
    cfg.seed = 4242;
    return cfg;
}

Config small_cfg() {
    Config cfg = stats_cfg();
    cfg.server_capacity = 100;
    cfg.wsc_count = 1;
    cfg.cells_per_wsc = 4;
    cfg.racks_per_cell = 10;
    cfg.servers_per_rack = 40;
    cfg.simulation_slots = 5;
    cfg.placement_mode = PlacementMode::rack_split;
    return cfg;
}

// Upper chi-squared quantile via the Wilson-Hilferty cube approximation;
// accurate to a fraction of a percent for df >= 5, plenty for a gate at
// the 0.999 level.
double chi2_upper(double df, double z) {
    const double t = 2.0 / (9.0 * df);
    const double c = 1.0 - t + z * std::sqrt(t);
    return df * c * c * c;
}

constexpr double kZ999 = 3.0902; // standard normal 0.999 quantile

} // namespace

TEST_CASE("request attributes are uniform over their ranges", "[workload][stats]") {
    Config cfg = stats_cfg();
    Topology topo = derive_topology(cfg);
    Workload w = generate_workload(topo, cfg);
    REQUIRE(w.total_requests() >= 1000000);

    std::vector<std::uint64_t> type_count(100, 0);
    std::vector<std::uint64_t> time_count(10, 0);
    std::vector<std::uint64_t> intensity_count(791, 0);
    double intensity_sum = 0.0;
    std::uint64_t n = 0;
    std::uint64_t out_of_range = 0;
    for (const auto& batch : w.batches)
        for (const auto& r : batch) {
            if (r.service_type < 0 || r.service_type >= 100 || r.service_time < 1 ||
                r.service_time > 10 || r.intensity < 10 || r.intensity > 800) {
                out_of_range += 1;
                continue;
            }
            type_count[r.service_type] += 1;
            time_count[r.service_time - 1] += 1;
            intensity_count[r.intensity - 10] += 1;
            intensity_sum += static_cast<double>(r.intensity);
            n += 1;
        }
    REQUIRE(out_of_range == 0);

    auto chi2 = [n](const std::vector<std::uint64_t>& counts) {
        const double expected =
            static_cast<double>(n) / static_cast<double>(counts.size());
        double stat = 0.0;
        for (std::uint64_t c : counts) {
            const double d = static_cast<double>(c) - expected;
            stat += d * d / expected;
        }
        return stat;
    };
    CHECK(chi2(type_count) < chi2_upper(99, kZ999));
    CHECK(chi2(time_count) < chi2_upper(9, kZ999));
    CHECK(chi2(intensity_count) < chi2_upper(790, kZ999));

    // Mean intensity of U[10, 800] is 405; demand it within 1%.
    CHECK_THAT(intensity_sum / static_cast<double>(n), WithinRel(405.0, 0.01));
}

TEST_CASE("profiles hold sorted distinct types from the catalog", "[workload]") {
    Config cfg = small_cfg();
    Topology topo = derive_topology(cfg);
    Workload w = generate_workload(topo, cfg);
    REQUIRE(w.profiles.size() == static_cast<std::size_t>(topo.total_servers()));
    for (const auto& p : w.profiles) {
        REQUIRE(p.offered_types.size() == 5);
        CHECK(std::is_sorted(p.offered_types.begin(), p.offered_types.end()));
        CHECK(std::adjacent_find(p.offered_types.begin(), p.offered_types.end()) ==
              p.offered_types.end());
        for (int t : p.offered_types) {
            CHECK(t >= 0);
            CHECK(t < cfg.service_type_count);
        }
    }
}

TEST_CASE("initial load lands inside the configured band", "[workload]") {
    Config cfg = small_cfg();
    Topology topo = derive_topology(cfg);
    Workload w = generate_workload(topo, cfg);

    std::vector<std::int64_t> per_server(topo.total_servers(), 0);
    std::uint64_t bad_residents = 0;
    for (const auto& r : w.residents) {
        per_server[r.server] += r.intensity;
        const auto& types = w.profiles[r.server].offered_types;
        if (r.expiry_slot < 1 || r.expiry_slot > cfg.service_time_max ||
            !std::binary_search(types.begin(), types.end(), r.service_type) ||
            r.intensity < 1 || r.intensity > cfg.intensity_max)
            bad_residents += 1;
    }
    REQUIRE(bad_residents == 0);
    const auto lo = static_cast<std::int64_t>(
        std::ceil(cfg.initial_load_min / 100.0 * cfg.server_capacity));
    const auto hi = static_cast<std::int64_t>(
        std::floor(cfg.initial_load_max / 100.0 * cfg.server_capacity));
    for (std::int64_t total : per_server) {
        CHECK(total >= lo);
        CHECK(total <= hi);
    }
}

TEST_CASE("an initial load band with no integer target errors out", "[workload]") {
    Config cfg = small_cfg();
    cfg.server_capacity = 10;
    cfg.intensity_min = 1;
    cfg.intensity_max = 10;
    cfg.initial_load_min = 1; // 0.1 vCPU -> ceil 1
    cfg.initial_load_max = 9; // 0.9 vCPU -> floor 0
    Topology topo = derive_topology(cfg);
    CHECK_THROWS_AS(generate_workload(topo, cfg), std::invalid_argument);
}

TEST_CASE("a zero band seeds an idle fleet", "[workload]") {
    Config cfg = small_cfg();
    cfg.initial_load_min = 0;
    cfg.initial_load_max = 0;
    Topology topo = derive_topology(cfg);
    Workload w = generate_workload(topo, cfg);
    CHECK(w.residents.empty());
}

TEST_CASE("batch size follows the load-balance calibration", "[workload]") {
    Config cfg = small_cfg(); // 1600 servers x 100 vCPU, band 80-85
    Topology topo = derive_topology(cfg);
    // rho 0.825, mean intensity 405, mean time 5.5
    const double expected = 0.825 * 160000.0 / (405.0 * 5.5);
    CHECK(batch_size_per_slot(topo, cfg) == std::llround(expected));
    CHECK(batch_size_per_slot(topo, cfg) == 59);

    cfg.initial_load_min = 20;
    cfg.initial_load_max = 25;
    CHECK(batch_size_per_slot(topo, cfg) ==
          std::llround(0.225 * 160000.0 / (405.0 * 5.5)));
    for (const auto& batch : generate_workload(topo, cfg).batches)
        CHECK(batch.size() == static_cast<std::size_t>(batch_size_per_slot(topo, cfg)));
}

TEST_CASE("request ids are dense and arrival slots match batches", "[workload]") {
    Config cfg = small_cfg();
    Topology topo = derive_topology(cfg);
    Workload w = generate_workload(topo, cfg);
    std::uint64_t expect_id = 0;
    for (std::size_t slot = 0; slot < w.batches.size(); ++slot)
        for (const auto& r : w.batches[slot]) {
            CHECK(r.id == expect_id++);
            CHECK(r.arrival_slot == static_cast<int>(slot));
        }
}

TEST_CASE("WSC assignment is parallel to batches and uniform", "[workload][stats]") {
    Config cfg = small_cfg();
    cfg.wsc_count = 4;
    cfg.simulation_slots = 200;
    Topology topo = derive_topology(cfg);
    Workload w = generate_workload(topo, cfg);
    REQUIRE(w.wsc_assignment.size() == w.batches.size());

    std::vector<std::uint64_t> counts(4, 0);
    std::uint64_t n = 0;
    for (std::size_t slot = 0; slot < w.batches.size(); ++slot) {
        REQUIRE(w.wsc_assignment[slot].size() == w.batches[slot].size());
        for (int wsc : w.wsc_assignment[slot]) {
            REQUIRE(wsc >= 0);
            REQUIRE(wsc < 4);
            counts[wsc] += 1;
            n += 1;
        }
    }
    const double expected = static_cast<double>(n) / 4.0;
    double stat = 0.0;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    CHECK(stat < chi2_upper(3, kZ999));
}

TEST_CASE("the same seed reproduces the workload bit for bit", "[workload]") {
    Config cfg = small_cfg();
    Topology topo = derive_topology(cfg);
    Workload a = generate_workload(topo, cfg);
    Workload b = generate_workload(topo, cfg);
    CHECK(a.profiles == b.profiles);
    CHECK(a.residents == b.residents);
    CHECK(a.batches == b.batches);
    CHECK(a.wsc_assignment == b.wsc_assignment);

    cfg.seed += 1;
    Workload c = generate_workload(topo, cfg);
    CHECK(a.batches != c.batches);
}

TEST_CASE("trace CSV round-trips the batches", "[workload]") {
    Config cfg = small_cfg();
    Topology topo = derive_topology(cfg);
    Workload w = generate_workload(topo, cfg);

    std::stringstream buf;
    write_trace_csv(buf, w);
    auto batches = read_trace_csv(buf, cfg.simulation_slots);
    CHECK(batches == w.batches);
}

TEST_CASE("trace CSV rejects malformed input", "[workload]") {
    std::istringstream empty("");
    CHECK_THROWS_AS(read_trace_csv(empty, 5), std::invalid_argument);

    std::istringstream bad_row("id,arrival_slot,type,time,intensity\n1,2,oops\n");
    CHECK_THROWS_AS(read_trace_csv(bad_row, 5), std::invalid_argument);

    std::istringstream bad_slot("id,arrival_slot,type,time,intensity\n1,9,3,1,10\n");
    CHECK_THROWS_AS(read_trace_csv(bad_slot, 5), std::invalid_argument);
}
