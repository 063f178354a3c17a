#pragma once

#include <cstdint>
#include <vector>

namespace hoopt {

enum class AntennaKind { tri_sector, omni };

/// One carrier. The three defaults (see default_bands) are the 1.7/2.1 GHz
/// macro layers and the 3.5 GHz small-cell layer.
struct BandConfig {
  int band_id = 0;
  double carrier_ghz = 0.0;
  double bandwidth_mhz = 0.0;
  int total_prbs = 0;
  double tx_dbm = 0.0;
  double antenna_height_m = 0.0;
  AntennaKind antenna = AntennaKind::omni;
  double max_gain_dbi = 0.0;
};

struct Cell {
  int cell_id = 0;
  int band_id = 0;
  double x_m = 0.0;
  double y_m = 0.0;
  double azimuth_deg = 0.0;  // tri-sector only
  int allocated_prbs = 0;
};

/// Close-in dual-slope path loss plus grid-sampled log-normal shadowing.
struct PropagationModel {
  double ple_near = 2.9;            // n1
  double ple_far = 3.9;             // n2
  double breakpoint_m = 150.0;      // d_th
  double shadowing_sigma_db = 6.9;
  double shadowing_grid_m = 10.0;
  std::uint64_t shadowing_seed = 0;
};

struct User {
  int user_id = 0;
  double x_m = 0.0;
  double y_m = 0.0;
  double speed_kmh = 0.0;  // constant for the run
  double wp_x_m = 0.0;
  double wp_y_m = 0.0;
  int serving_cell = -1;
  int prb_demand = 4;
};

struct NetworkConfig {
  double area_side_m = 2000.0;            // 4 km^2
  int macro_cells_per_band = 6;           // 2 sites x 3 sectors
  int small_cell_count = 12;
  double user_density_per_km2 = 15.0;
  double tti_ms = 1.0;
  double sim_duration_ms = 60000.0;
  double measurement_epoch_ms = 100.0;    // serving-RSRP sampling period
  int user_prb_demand = 4;
  std::vector<double> user_speeds_kmh = {3.0, 60.0, 120.0, 240.0};
  std::uint64_t master_seed = 1;

  double area_km2() const { return area_side_m * area_side_m * 1e-6; }
  int user_count() const;
};

/// The three carriers of the default deployment.
std::vector<BandConfig> default_bands(double macro_tx_dbm = 35.0, double small_tx_dbm = 20.0,
                                      double macro_height_m = 30.0, double small_height_m = 20.0);

constexpr double kUserHeightM = 1.5;

}  // namespace hoopt
