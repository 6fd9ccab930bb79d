#pragma once

// Umbrella header for the wscsim library: deterministic slot-based
// simulation of a hierarchically organized cloud (WSCs, cells, racks,
// servers) under two resource-management mechanisms, hierarchical
// monitoring-and-routing and a bid-based market, with message accounting
// and load-balance metrics.

#include "wscsim/config.hpp"
#include "wscsim/hierarchy_engine.hpp"
#include "wscsim/market_engine.hpp"
#include "wscsim/message_ledger.hpp"
#include "wscsim/metrics.hpp"
#include "wscsim/presets.hpp"
#include "wscsim/report.hpp"
#include "wscsim/server.hpp"
#include "wscsim/topology.hpp"
#include "wscsim/workload.hpp"
