#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hoopt/sim/types.hpp"

namespace hoopt {

/// Free-space path loss at the 1 m reference distance, in dB.
double fspl_1m_db(double carrier_ghz);

/// Shared dual-slope kernel on the squared distance (already clamped to
/// >= 1 m^2); both the public operation and the simulator fast path go
/// through this so they agree bit-for-bit.
inline double ci_path_gain_db(double d2_m2, double fspl_1m, double ple_near, double ple_far,
                              double breakpoint_m2, double log10_breakpoint_m2) {
  const double log10_d2 = std::log10(d2_m2);
  double pl = -fspl_1m - 5.0 * ple_near * log10_d2;
  if (d2_m2 > breakpoint_m2) pl -= 5.0 * ple_far * (log10_d2 - log10_breakpoint_m2);
  return pl;
}

/// Dual-slope close-in path gain in dB (negative). Distances in (0, 1m)
/// clamp to the 1 m reference; non-positive or non-finite distances are
/// rejected.
double path_loss_db(double distance_3d_m, const BandConfig& band, const PropagationModel& prop);

constexpr double kRadToDeg = 57.29577951308232;

/// Parabolic tri-sector pattern: 65 deg beamwidth, 30 dB floor. Angle
/// convention is compass-style, 0 deg towards +y, clockwise positive.
inline double tri_sector_gain_db(double max_gain_dbi, double azimuth_deg, double dx_m,
                                 double dy_m) {
  double off = std::atan2(dx_m, dy_m) * kRadToDeg - azimuth_deg;
  if (off > 180.0) off -= 360.0;
  if (off < -180.0) off += 360.0;
  const double atten = 12.0 * (off / 65.0) * (off / 65.0);
  return max_gain_dbi - (atten < 30.0 ? atten : 30.0);
}

/// Horizontal antenna gain towards (dx, dy) from the cell, in dBi.
/// Omni cells radiate max_gain_dbi everywhere.
double antenna_gain_db(const BandConfig& band, double azimuth_deg, double dx_m, double dy_m);

/// Per-cell shadowing field: i.i.d. Gaussian(0, sigma^2) on a square grid,
/// bilinearly interpolated so nearby positions see correlated values.
/// Deterministic given (seed, cell_id).
class ShadowingMap {
 public:
  ShadowingMap() = default;
  ShadowingMap(double area_side_m, double resolution_m, double sigma_db, std::uint64_t seed,
               int cell_id);

  /// Shadowing in dB at (x, y), clamped to the map boundary.
  double at(double x_m, double y_m) const;

  const std::vector<double>& nodes() const { return nodes_; }
  int nodes_per_side() const { return n_; }

 private:
  int n_ = 0;          // nodes per side
  double res_m_ = 1.0;
  double side_m_ = 0.0;
  std::vector<double> nodes_;  // row-major (iy * n + ix)
};

/// Downlink RSRP in dBm: tx power + antenna gains + shadowing + path gain,
/// all composed in the dB domain. 3D distance uses the band's antenna
/// height against a 1.5 m user height. Pass nullptr to disable shadowing.
double rsrp_dbm(const Cell& cell, const BandConfig& band, double user_x_m, double user_y_m,
                const PropagationModel& prop, const ShadowingMap* shadow);

}  // namespace hoopt
