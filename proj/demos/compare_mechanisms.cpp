// Runs the desk-scale high-load scenario through both mechanisms on one
// shared request trace and prints the side-by-side comparison.

#include <iostream>

#include "wscsim/wscsim.hpp"

int main() {
    wscsim::Config cfg = wscsim::preset_config("desk-high");
    cfg.simulation_slots = 100;

    const wscsim::Topology topo = wscsim::derive_topology(cfg);
    const wscsim::Workload workload = wscsim::generate_workload(topo, cfg);
    std::cout << "servers: " << topo.total_servers()
              << ", requests: " << workload.total_requests() << "\n\n";

    wscsim::RunResult hier = wscsim::run_hierarchical(cfg, workload);
    wscsim::RunResult market = wscsim::run_market(cfg, workload);
    wscsim::write_comparison(std::cout, hier.summary, market.summary);
    return 0;
}
