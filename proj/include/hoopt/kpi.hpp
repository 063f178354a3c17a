#pragma once

#include <span>
#include <vector>

#include "hoopt/sim/types.hpp"

namespace hoopt {

/// Measured outcomes of one simulation run.
struct KpiVector {
  double edge_rsrp_dbm = 0.0;          // M
  double hosr_pct = 100.0;             // H
  std::vector<double> band_loads;      // L_f, fraction in [0,1] per band
  double load_factor_pct = 100.0;      // L
};

/// Mean serving RSRP of the 25th-percentile-RSRP user samples (nearest-rank
/// percentile, samples at or below the cut). Throws InsufficientDataError
/// on an empty sample set.
double edge_rsrp_mean(std::span<const double> rsrp_samples_dbm);

/// 100 * hos / (hos + hof); a run with zero attempts counts as 100%.
double hosr(std::uint64_t hos, std::uint64_t hof);

/// Mean PRB utilization over cells of one band, the utilizations already
/// time-averaged over the measurement window.
double band_load(std::span<const double> cell_utilizations);

/// Instantaneous variant straight off Cell allocations.
double band_load(std::span<const Cell> cells, std::span<const BandConfig> bands);

/// Geometric mean of per-band idle fractions, in percent. 100 = all bands
/// empty, 0 = any band saturated.
double load_factor(std::span<const double> band_loads);

/// Reproducible min-max normalization: the bounds that produced a
/// normalized value are kept alongside it.
struct KpiBounds {
  double lo = 0.0;
  double hi = 0.0;

  /// (x - lo) / (hi - lo), clamped to [0,1]; constant columns map to 0.
  double normalize(double x) const;
};

KpiBounds column_bounds(std::span<const double> values);

struct NormalizedKpis {
  double m_tilde = 0.0;
  double h_tilde = 0.0;
  double l_tilde = 0.0;
};

struct NormalizationBounds {
  KpiBounds edge_rsrp;  // dBm
  KpiBounds hosr;       // percent
  KpiBounds load_factor;  // percent
};

}  // namespace hoopt
