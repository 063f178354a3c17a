#include "hoopt/sim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hoopt/csv.hpp"
#include "hoopt/errors.hpp"
#include "hoopt/rng.hpp"

namespace hoopt {

namespace {

// First `count` sites of a hex lattice covering the area, center-most first,
// each perturbed by up to 10% of the lattice pitch.
std::vector<std::pair<double, double>> hex_sites(double side_m, int count, Rng& rng) {
  if (count <= 0) return {};
  int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count))));
  int rows = (count + cols - 1) / cols;
  double pitch_x = side_m / (cols + 0.5);
  double pitch_y = side_m / (rows + 1);
  std::vector<std::pair<double, double>> sites;
  for (int r = 0; r < rows && static_cast<int>(sites.size()) < count; ++r) {
    for (int c = 0; c < cols && static_cast<int>(sites.size()) < count; ++c) {
      double x = pitch_x * (c + 1) + (r % 2 ? pitch_x / 2 : 0.0);
      double y = pitch_y * (r + 1);
      x += rng.uniform(-0.1, 0.1) * pitch_x;
      y += rng.uniform(-0.1, 0.1) * pitch_y;
      sites.emplace_back(std::clamp(x, 0.0, side_m), std::clamp(y, 0.0, side_m));
    }
  }
  return sites;
}

}  // namespace

Scenario make_scenario(const NetworkConfig& net, const PropagationModel& prop,
                       std::vector<BandConfig> bands, std::vector<Cell> cells) {
  Scenario sc;
  sc.net = net;
  sc.prop = prop;
  sc.bands = std::move(bands);
  sc.cells = std::move(cells);
  sc.band_cells.assign(sc.bands.size(), {});
  for (const auto& c : sc.cells) {
    if (c.band_id < 0 || c.band_id >= static_cast<int>(sc.bands.size()))
      throw ConfigError("cell " + std::to_string(c.cell_id) + " references unknown band");
    sc.band_cells[c.band_id].push_back(c.cell_id);
  }
  const std::uint64_t shadow_seed =
      prop.shadowing_seed ? prop.shadowing_seed : substream_seed(net.master_seed, "shadow-root");
  sc.shadowing.reserve(sc.cells.size());
  for (const auto& c : sc.cells)
    sc.shadowing.emplace_back(net.area_side_m, prop.shadowing_grid_m, prop.shadowing_sigma_db,
                              shadow_seed, c.cell_id);

  sc.breakpoint_m2 = prop.breakpoint_m * prop.breakpoint_m;
  sc.log10_breakpoint_m2 = std::log10(sc.breakpoint_m2);
  sc.radio.reserve(sc.cells.size());
  for (const auto& c : sc.cells) {
    const auto& b = sc.bands[c.band_id];
    const double dh = b.antenna_height_m - kUserHeightM;
    sc.radio.push_back({c.x_m, c.y_m, dh * dh, b.tx_dbm, b.max_gain_dbi,
                        fspl_1m_db(b.carrier_ghz), c.azimuth_deg,
                        b.antenna == AntennaKind::tri_sector});
  }
  return sc;
}

Scenario build_default_scenario(const NetworkConfig& net, const PropagationModel& prop,
                                std::vector<BandConfig> bands) {
  if (bands.empty()) throw ConfigError("no bands configured");
  std::vector<Cell> cells;
  int next_id = 0;
  Rng rng(substream_seed(net.master_seed, "topology"));
  for (const auto& b : bands) {
    if (b.antenna == AntennaKind::tri_sector) {
      if (net.macro_cells_per_band % 3 != 0)
        throw ConfigError("macro cell count must be a multiple of 3 (tri-sector sites)");
      int n_sites = net.macro_cells_per_band / 3;
      auto sites = hex_sites(net.area_side_m, n_sites, rng);
      for (auto [x, y] : sites)
        for (double az : {0.0, 120.0, 240.0})
          cells.push_back({next_id++, b.band_id, x, y, az, 0});
    } else {
      for (int i = 0; i < net.small_cell_count; ++i) {
        double x = rng.uniform(0.0, net.area_side_m);
        double y = rng.uniform(0.0, net.area_side_m);
        cells.push_back({next_id++, b.band_id, x, y, 0.0, 0});
      }
    }
  }
  return make_scenario(net, prop, std::move(bands), std::move(cells));
}

std::string topology_csv(const Scenario& sc) {
  std::ostringstream out;
  out << "cell_id,band_ghz,x_m,y_m,azimuth_deg,height_m,tx_dbm\n";
  for (const auto& c : sc.cells) {
    const auto& b = sc.band_of(c);
    out << c.cell_id << ',' << csv::fmt(b.carrier_ghz) << ',' << csv::fmt(c.x_m) << ','
        << csv::fmt(c.y_m) << ',' << csv::fmt(c.azimuth_deg) << ','
        << csv::fmt(b.antenna_height_m) << ',' << csv::fmt(b.tx_dbm) << '\n';
  }
  return out.str();
}

}  // namespace hoopt
