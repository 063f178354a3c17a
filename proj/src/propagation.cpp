#include "hoopt/sim/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hoopt/rng.hpp"

namespace hoopt {

namespace {
constexpr double kSpeedOfLight = 2.998e8;  // m/s, CI-model reference anchor
constexpr double kPi = 3.14159265358979323846;
}  // namespace

int NetworkConfig::user_count() const {
  return static_cast<int>(std::lround(user_density_per_km2 * area_km2()));
}

std::vector<BandConfig> default_bands(double macro_tx_dbm, double small_tx_dbm,
                                      double macro_height_m, double small_height_m) {
  return {
      {0, 1.7, 10.0, 52, macro_tx_dbm, macro_height_m, AntennaKind::tri_sector, 14.0},
      {1, 2.1, 15.0, 78, macro_tx_dbm, macro_height_m, AntennaKind::tri_sector, 14.0},
      {2, 3.5, 20.0, 106, small_tx_dbm, small_height_m, AntennaKind::omni, 0.0},
  };
}

double fspl_1m_db(double carrier_ghz) {
  return 20.0 * std::log10(4.0 * kPi * carrier_ghz * 1e9 / kSpeedOfLight);
}

double path_loss_db(double distance_3d_m, const BandConfig& band, const PropagationModel& prop) {
  if (!std::isfinite(distance_3d_m) || distance_3d_m <= 0.0)
    throw std::invalid_argument("path_loss_db: distance must be positive and finite");
  const double d2 = std::max(distance_3d_m * distance_3d_m, 1.0);
  const double bp2 = prop.breakpoint_m * prop.breakpoint_m;
  return ci_path_gain_db(d2, fspl_1m_db(band.carrier_ghz), prop.ple_near, prop.ple_far, bp2,
                         std::log10(bp2));
}

double antenna_gain_db(const BandConfig& band, double azimuth_deg, double dx_m, double dy_m) {
  if (band.antenna == AntennaKind::omni) return band.max_gain_dbi;
  return tri_sector_gain_db(band.max_gain_dbi, azimuth_deg, dx_m, dy_m);
}

ShadowingMap::ShadowingMap(double area_side_m, double resolution_m, double sigma_db,
                           std::uint64_t seed, int cell_id)
    : res_m_(resolution_m), side_m_(area_side_m) {
  n_ = static_cast<int>(std::ceil(area_side_m / resolution_m)) + 1;
  nodes_.resize(static_cast<std::size_t>(n_) * n_);
  Rng rng(substream_seed(seed, "shadowing", static_cast<std::uint64_t>(cell_id)));
  for (auto& v : nodes_) v = rng.normal(0.0, sigma_db);
}

double ShadowingMap::at(double x_m, double y_m) const {
  if (nodes_.empty()) return 0.0;
  double x = std::clamp(x_m, 0.0, side_m_) / res_m_;
  double y = std::clamp(y_m, 0.0, side_m_) / res_m_;
  int ix = std::min(static_cast<int>(x), n_ - 2);
  int iy = std::min(static_cast<int>(y), n_ - 2);
  double fx = x - ix;
  double fy = y - iy;
  const double* row0 = nodes_.data() + static_cast<std::size_t>(iy) * n_ + ix;
  const double* row1 = row0 + n_;
  double a = row0[0] + fx * (row0[1] - row0[0]);
  double b = row1[0] + fx * (row1[1] - row1[0]);
  return a + fy * (b - a);
}

double rsrp_dbm(const Cell& cell, const BandConfig& band, double user_x_m, double user_y_m,
                const PropagationModel& prop, const ShadowingMap* shadow) {
  const double dx = user_x_m - cell.x_m;
  const double dy = user_y_m - cell.y_m;
  const double dh = band.antenna_height_m - kUserHeightM;
  const double d2 = std::max(dx * dx + dy * dy + dh * dh, 1.0);
  const double bp2 = prop.breakpoint_m * prop.breakpoint_m;
  double v = band.tx_dbm + antenna_gain_db(band, cell.azimuth_deg, dx, dy) +
             ci_path_gain_db(d2, fspl_1m_db(band.carrier_ghz), prop.ple_near, prop.ple_far, bp2,
                             std::log10(bp2));
  if (shadow) v += shadow->at(user_x_m, user_y_m);
  return v;
}

}  // namespace hoopt
