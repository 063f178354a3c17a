#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "hoopt/sim/propagation.hpp"
#include "hoopt/sim/types.hpp"

namespace hoopt {

/// Immutable radio environment shared by every run of a sweep: topology,
/// band table and per-cell shadowing fields. Built once from the network
/// master seed; safe to share read-only across threads.
struct Scenario {
  NetworkConfig net;
  PropagationModel prop;
  std::vector<BandConfig> bands;            // indexed by band_id
  std::vector<Cell> cells;                  // indexed by cell_id
  std::vector<ShadowingMap> shadowing;      // indexed by cell_id
  std::vector<std::vector<int>> band_cells; // cell ids per band

  // Per-cell constants for the measurement hot path; same arithmetic as
  // rsrp_dbm, with the per-band terms folded out of the inner loop.
  struct CellRadio {
    double x_m, y_m, dz2_m2;
    double tx_dbm, max_gain_dbi, fspl_1m_db, azimuth_deg;
    bool tri_sector;
  };
  std::vector<CellRadio> radio;
  double breakpoint_m2 = 0.0;
  double log10_breakpoint_m2 = 0.0;

  const BandConfig& band_of(const Cell& c) const { return bands[c.band_id]; }

  double measure_rsrp(int cell_id, double x_m, double y_m) const {
    const CellRadio& r = radio[cell_id];
    const double dx = x_m - r.x_m;
    const double dy = y_m - r.y_m;
    const double d2 = std::max(dx * dx + dy * dy + r.dz2_m2, 1.0);
    const double gain =
        r.tri_sector ? tri_sector_gain_db(r.max_gain_dbi, r.azimuth_deg, dx, dy) : r.max_gain_dbi;
    double v = r.tx_dbm + gain +
               ci_path_gain_db(d2, r.fspl_1m_db, prop.ple_near, prop.ple_far, breakpoint_m2,
                               log10_breakpoint_m2);
    if (!shadowing.empty()) v += shadowing[cell_id].at(x_m, y_m);
    return v;
  }
};

/// Default three-layer deployment: per macro band, sites on a perturbed
/// hexagonal layout with 0/120/240 deg sectors; small cells uniform at
/// random. All placement randomness comes from net.master_seed.
Scenario build_default_scenario(const NetworkConfig& net, const PropagationModel& prop,
                                std::vector<BandConfig> bands);

/// Wrap hand-placed cells into a Scenario (used by tests and toy setups);
/// builds the shadowing maps from prop + net.master_seed.
Scenario make_scenario(const NetworkConfig& net, const PropagationModel& prop,
                       std::vector<BandConfig> bands, std::vector<Cell> cells);

/// CSV dump: cell_id,band_ghz,x_m,y_m,azimuth_deg,height_m,tx_dbm
std::string topology_csv(const Scenario& sc);

}  // namespace hoopt
