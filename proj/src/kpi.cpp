#include "hoopt/kpi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hoopt/errors.hpp"

namespace hoopt {

double edge_rsrp_mean(std::span<const double> samples) {
  if (samples.empty()) throw InsufficientDataError("edge_rsrp_mean: no RSRP samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t rank =
      static_cast<std::size_t>(std::ceil(0.25 * static_cast<double>(sorted.size())));
  const double cut = sorted[rank - 1];
  double sum = 0.0;
  std::size_t n = 0;
  for (double s : sorted) {
    if (s > cut) break;
    sum += s;
    ++n;
  }
  return sum / static_cast<double>(n);
}

double hosr(std::uint64_t hos, std::uint64_t hof) {
  if (hos + hof == 0) return 100.0;  // no attempts, no failures
  return 100.0 * static_cast<double>(hos) / static_cast<double>(hos + hof);
}

double band_load(std::span<const double> cell_utilizations) {
  if (cell_utilizations.empty()) throw std::invalid_argument("band_load: no cells");
  double sum = 0.0;
  for (double u : cell_utilizations) sum += u;
  return sum / static_cast<double>(cell_utilizations.size());
}

double band_load(std::span<const Cell> cells, std::span<const BandConfig> bands) {
  if (cells.empty()) throw std::invalid_argument("band_load: no cells");
  const int band = cells.front().band_id;
  double sum = 0.0;
  for (const auto& c : cells) {
    if (c.band_id != band) throw std::invalid_argument("band_load: cells span multiple bands");
    sum += static_cast<double>(c.allocated_prbs) / static_cast<double>(bands[band].total_prbs);
  }
  return sum / static_cast<double>(cells.size());
}

double load_factor(std::span<const double> band_loads) {
  if (band_loads.empty()) return 100.0;
  double prod = 1.0;
  for (double l : band_loads) {
    if (!(l >= 0.0 && l <= 1.0)) throw std::invalid_argument("load_factor: load outside [0,1]");
    prod *= 1.0 - l;
  }
  return 100.0 * std::pow(prod, 1.0 / static_cast<double>(band_loads.size()));
}

double KpiBounds::normalize(double x) const {
  if (hi <= lo) return 0.0;  // constant column
  return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
}

KpiBounds column_bounds(std::span<const double> values) {
  if (values.empty()) throw InsufficientDataError("column_bounds: empty column");
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  return {*mn, *mx};
}

}  // namespace hoopt
