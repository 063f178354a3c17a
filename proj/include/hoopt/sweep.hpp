#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hoopt/ho/cop.hpp"
#include "hoopt/kpi.hpp"
#include "hoopt/sim/runner.hpp"

namespace hoopt {

struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;
};

/// The swept COP grid. Defaults reproduce the standardized ranges with
/// 2 dB threshold/offset steps: 7 * 11 * 11 * 7 * 6 = 35,574 points.
struct SweepGrid {
  std::vector<int> a5_ttt_ms{kTttValuesMs.begin(), kTttValuesMs.end()};
  AxisRange a5_th1{-116.0, -96.0, 2.0};
  AxisRange a5_th2{-116.0, -96.0, 2.0};
  std::vector<int> a3_ttt_ms{kTttValuesMs.begin(), kTttValuesMs.end()};
  AxisRange a3_off{0.0, 10.0, 2.0};

  std::size_t size() const;
  /// Per-axis value lists in field order (TTT axes widened to double).
  std::array<std::vector<double>, 5> axes() const;
  CopVector at(const std::array<std::size_t, 5>& idx) const;
};

/// Ascending values lo, lo+step, ..., hi. Throws ConfigError when the step
/// does not divide the range evenly.
std::vector<double> axis_values(const AxisRange& r);

/// Lexicographically ordered cartesian product in COP field order.
std::vector<CopVector> build_grid(const SweepGrid& grid);

struct DatasetRow {
  CopVector cop;
  std::uint64_t seed = 0;
  KpiVector kpis;
  /// Persisted form of kpis.band_loads; kpis.band_loads[i] is derived as
  /// band_load_pct[i] / 100 so CSV round-trips are bit-exact.
  std::array<double, 3> band_load_pct{0.0, 0.0, 0.0};
  std::uint64_t hos = 0;
  std::uint64_t hof = 0;
  double sim_duration_ms = 0.0;

  bool operator==(const DatasetRow& o) const;
};

struct DatasetMeta {
  std::uint64_t master_seed = 0;
  double sim_duration_ms = 0.0;
  std::string config_hash;  // hex, informational
};

struct Dataset {
  DatasetMeta meta;
  std::vector<DatasetRow> rows;
};

/// Independent but reproducible per-point seed.
std::uint64_t point_seed(std::uint64_t master_seed, std::uint64_t grid_index);

/// One grid point: full seeded run -> KPI row. Validates the COP ranges.
DatasetRow run_point(const Scenario& sc, const HandoverConfig& cfg, const CopVector& cop,
                     std::uint64_t seed);

struct SweepOptions {
  int jobs = 1;
  /// 0 = full grid; otherwise this many points drawn seed-deterministically
  /// without replacement (ascending grid order).
  std::size_t subsample = 0;
};

/// Runs the grid (optionally in parallel); row i of the result is grid
/// point i regardless of thread interleaving.
Dataset run_sweep(const Scenario& sc, const HandoverConfig& cfg, const SweepGrid& grid,
                  const SweepOptions& opt = {});

/// The deterministic subsample of grid indices used by run_sweep.
std::vector<std::size_t> subsample_indices(std::size_t grid_size, std::size_t count,
                                           std::uint64_t master_seed);

inline const char* kDatasetHeader =
    "a5_ttt_ms,a5_th1_dbm,a5_th2_dbm,a3_ttt_ms,a3_off_db,seed,edge_rsrp_dbm,hosr_pct,"
    "load_1700_pct,load_2100_pct,load_3500_pct,load_factor_pct,hos_count,hof_count";

std::string dataset_csv(const Dataset& ds);
void write_dataset(const std::string& path, const Dataset& ds);

/// Header-keyed parse (column order free); throws SchemaError with the
/// offending line number on malformed input, unknown columns or duplicate
/// (cop, seed) pairs.
Dataset parse_dataset_csv(const std::string& text);
Dataset read_dataset(const std::string& path);

}  // namespace hoopt
