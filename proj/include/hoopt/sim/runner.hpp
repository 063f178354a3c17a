#pragma once

#include <cstdint>
#include <vector>

#include "hoopt/ho/engine.hpp"
#include "hoopt/kpi.hpp"
#include "hoopt/sim/topology.hpp"

namespace hoopt {

struct RunOptions {
  bool keep_event_log = false;
};

struct RunResult {
  KpiVector kpis;
  HandoverLedger ledger;
  std::vector<HandoverEvent> events;      // populated when keep_event_log
  std::vector<double> cell_utilization;   // time-averaged N_a/N per cell
};

/// One seeded discrete-time run over a prebuilt scenario. The environment
/// (topology, shadowing) lives in the scenario; `run_seed` drives the user
/// process (placement, speeds, waypoints), so sweep points share the same
/// network but see independent user realizations. Single-threaded and
/// deterministic: fixed (scenario, cop, cfg, run_seed) reproduces every
/// RSRP sample bit-for-bit.
RunResult run_simulation(const Scenario& sc, const CopVector& cop, const HandoverConfig& cfg,
                         std::uint64_t run_seed, const RunOptions& opt = {});

/// Same loop with a hand-built user population (toy scenarios, tests).
/// user_ids must be contiguous from 0.
RunResult run_simulation_with_users(const Scenario& sc, const CopVector& cop,
                                    const HandoverConfig& cfg, std::vector<User> users,
                                    std::uint64_t run_seed, const RunOptions& opt = {});

/// Event log CSV: time_ms,user_id,event,source_cell,target_cell,outcome,cause
std::string event_log_csv(const std::vector<HandoverEvent>& events);

}  // namespace hoopt
