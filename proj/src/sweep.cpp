#include "hoopt/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "hoopt/csv.hpp"
#include "hoopt/errors.hpp"
#include "hoopt/rng.hpp"

namespace hoopt {

std::vector<double> axis_values(const AxisRange& r) {
  if (r.step <= 0.0) throw ConfigError("axis step must be positive");
  if (r.hi < r.lo) throw ConfigError("axis range is inverted");
  const double span = r.hi - r.lo;
  const double n = span / r.step;
  const double rounded = std::round(n);
  if (std::abs(n - rounded) > 1e-9)
    throw ConfigError("axis step " + csv::fmt(r.step) + " does not divide range [" +
                      csv::fmt(r.lo) + ", " + csv::fmt(r.hi) + "] evenly");
  std::vector<double> vals;
  const auto count = static_cast<std::size_t>(rounded) + 1;
  vals.reserve(count);
  for (std::size_t i = 0; i < count; ++i) vals.push_back(r.lo + static_cast<double>(i) * r.step);
  return vals;
}

std::array<std::vector<double>, 5> SweepGrid::axes() const {
  std::array<std::vector<double>, 5> a;
  a[0].assign(a5_ttt_ms.begin(), a5_ttt_ms.end());
  a[1] = axis_values(a5_th1);
  a[2] = axis_values(a5_th2);
  a[3].assign(a3_ttt_ms.begin(), a3_ttt_ms.end());
  a[4] = axis_values(a3_off);
  return a;
}

std::size_t SweepGrid::size() const {
  auto a = axes();
  std::size_t n = 1;
  for (const auto& ax : a) n *= ax.size();
  return n;
}

CopVector SweepGrid::at(const std::array<std::size_t, 5>& idx) const {
  auto a = axes();
  CopVector cop;
  cop.a5_ttt_ms = static_cast<int>(a[0][idx[0]]);
  cop.a5_th1_dbm = a[1][idx[1]];
  cop.a5_th2_dbm = a[2][idx[2]];
  cop.a3_ttt_ms = static_cast<int>(a[3][idx[3]]);
  cop.a3_off_db = a[4][idx[4]];
  return cop;
}

std::vector<CopVector> build_grid(const SweepGrid& grid) {
  auto a = grid.axes();
  for (const auto& ax : a)
    if (ax.empty()) throw ConfigError("empty grid axis");
  std::vector<CopVector> out;
  out.reserve(grid.size());
  for (double v0 : a[0])
    for (double v1 : a[1])
      for (double v2 : a[2])
        for (double v3 : a[3])
          for (double v4 : a[4])
            out.push_back({static_cast<int>(v0), v1, v2, static_cast<int>(v3), v4});
  return out;
}

bool DatasetRow::operator==(const DatasetRow& o) const {
  return cop == o.cop && seed == o.seed && hos == o.hos && hof == o.hof &&
         sim_duration_ms == o.sim_duration_ms && kpis.edge_rsrp_dbm == o.kpis.edge_rsrp_dbm &&
         kpis.hosr_pct == o.kpis.hosr_pct && kpis.load_factor_pct == o.kpis.load_factor_pct &&
         band_load_pct == o.band_load_pct && kpis.band_loads == o.kpis.band_loads;
}

std::uint64_t point_seed(std::uint64_t master_seed, std::uint64_t grid_index) {
  return substream_seed(master_seed, "sweep-point", grid_index);
}

DatasetRow run_point(const Scenario& sc, const HandoverConfig& cfg, const CopVector& cop,
                     std::uint64_t seed) {
  validate_cop(cop);
  RunResult res = run_simulation(sc, cop, cfg, seed);
  DatasetRow row;
  row.cop = cop;
  row.seed = seed;
  row.kpis = res.kpis;
  for (std::size_t i = 0; i < row.band_load_pct.size(); ++i) {
    const double frac = i < res.kpis.band_loads.size() ? res.kpis.band_loads[i] : 0.0;
    row.band_load_pct[i] = frac * 100.0;
    if (i < row.kpis.band_loads.size()) row.kpis.band_loads[i] = row.band_load_pct[i] / 100.0;
  }
  row.hos = res.ledger.hos;
  row.hof = res.ledger.hof;
  row.sim_duration_ms = sc.net.sim_duration_ms;
  return row;
}

std::vector<std::size_t> subsample_indices(std::size_t grid_size, std::size_t count,
                                           std::uint64_t master_seed) {
  if (count == 0 || count >= grid_size) {
    std::vector<std::size_t> all(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) all[i] = i;
    return all;
  }
  // Partial Fisher-Yates over the index range, then ascending order.
  std::vector<std::size_t> idx(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) idx[i] = i;
  Rng rng(substream_seed(master_seed, "grid-subsample"));
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.bounded(grid_size - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

Dataset run_sweep(const Scenario& sc, const HandoverConfig& cfg, const SweepGrid& grid,
                  const SweepOptions& opt) {
  const std::vector<CopVector> points = build_grid(grid);
  const std::vector<std::size_t> picked =
      subsample_indices(points.size(), opt.subsample, sc.net.master_seed);

  Dataset ds;
  ds.meta.master_seed = sc.net.master_seed;
  ds.meta.sim_duration_ms = sc.net.sim_duration_ms;
  ds.rows.resize(picked.size());

  const int jobs = std::max(1, opt.jobs);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_msg;
  std::mutex error_mu;

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= picked.size() || failed.load()) break;
      try {
        const std::size_t gi = picked[k];
        ds.rows[k] = run_point(sc, cfg, points[gi], point_seed(sc.net.master_seed, gi));
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        error_msg = e.what();
        failed.store(true);
        break;
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error("sweep failed: " + error_msg);
  return ds;
}

std::string dataset_csv(const Dataset& ds) {
  std::ostringstream out;
  out << "# hoopt-dataset master_seed=" << ds.meta.master_seed
      << " sim_duration_ms=" << csv::fmt(ds.meta.sim_duration_ms);
  if (!ds.meta.config_hash.empty()) out << " config_hash=" << ds.meta.config_hash;
  out << '\n' << kDatasetHeader << '\n';
  for (const auto& r : ds.rows) {
    const auto& k = r.kpis;
    out << r.cop.a5_ttt_ms << ',' << csv::fmt(r.cop.a5_th1_dbm) << ','
        << csv::fmt(r.cop.a5_th2_dbm) << ',' << r.cop.a3_ttt_ms << ','
        << csv::fmt(r.cop.a3_off_db) << ',' << r.seed << ',' << csv::fmt(k.edge_rsrp_dbm) << ','
        << csv::fmt(k.hosr_pct) << ',' << csv::fmt(r.band_load_pct[0]) << ','
        << csv::fmt(r.band_load_pct[1]) << ',' << csv::fmt(r.band_load_pct[2]) << ','
        << csv::fmt(k.load_factor_pct) << ',' << r.hos << ',' << r.hof << '\n';
  }
  return out.str();
}

void write_dataset(const std::string& path, const Dataset& ds) {
  csv::write_file_atomic(path, dataset_csv(ds));
}

Dataset parse_dataset_csv(const std::string& text) {
  Dataset ds;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  std::map<std::string, std::size_t> col;
  std::set<std::pair<CopVector, std::uint64_t>> seen;

  const std::vector<std::string> expected = csv::split(kDatasetHeader);

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      // Metadata comment: space-separated key=value tokens.
      std::istringstream meta(line.substr(1));
      std::string tok;
      while (meta >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "master_seed") ds.meta.master_seed = csv::parse_u64(val, line_no);
        else if (key == "sim_duration_ms") ds.meta.sim_duration_ms = csv::parse_double(val, line_no);
        else if (key == "config_hash") ds.meta.config_hash = val;
      }
      continue;
    }
    auto fields = csv::split(line);
    if (!have_header) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (std::find(expected.begin(), expected.end(), fields[i]) == expected.end())
          throw SchemaError("line " + std::to_string(line_no) + ": unknown column '" + fields[i] +
                            "'");
        if (col.count(fields[i]))
          throw SchemaError("line " + std::to_string(line_no) + ": duplicate column '" +
                            fields[i] + "'");
        col[fields[i]] = i;
      }
      for (const auto& name : expected)
        if (!col.count(name))
          throw SchemaError("line " + std::to_string(line_no) + ": missing column '" + name + "'");
      have_header = true;
      continue;
    }
    if (fields.size() != expected.size())
      throw SchemaError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(expected.size()) + " fields, got " +
                        std::to_string(fields.size()));
    auto f = [&](const char* name) -> const std::string& { return fields[col.at(name)]; };
    DatasetRow r;
    r.cop.a5_ttt_ms = csv::parse_int(f("a5_ttt_ms"), line_no);
    r.cop.a5_th1_dbm = csv::parse_double(f("a5_th1_dbm"), line_no);
    r.cop.a5_th2_dbm = csv::parse_double(f("a5_th2_dbm"), line_no);
    r.cop.a3_ttt_ms = csv::parse_int(f("a3_ttt_ms"), line_no);
    r.cop.a3_off_db = csv::parse_double(f("a3_off_db"), line_no);
    r.seed = csv::parse_u64(f("seed"), line_no);
    r.kpis.edge_rsrp_dbm = csv::parse_double(f("edge_rsrp_dbm"), line_no);
    r.kpis.hosr_pct = csv::parse_double(f("hosr_pct"), line_no);
    r.band_load_pct = {csv::parse_double(f("load_1700_pct"), line_no),
                       csv::parse_double(f("load_2100_pct"), line_no),
                       csv::parse_double(f("load_3500_pct"), line_no)};
    r.kpis.band_loads = {r.band_load_pct[0] / 100.0, r.band_load_pct[1] / 100.0,
                         r.band_load_pct[2] / 100.0};
    r.kpis.load_factor_pct = csv::parse_double(f("load_factor_pct"), line_no);
    r.hos = csv::parse_u64(f("hos_count"), line_no);
    r.hof = csv::parse_u64(f("hof_count"), line_no);
    r.sim_duration_ms = ds.meta.sim_duration_ms;
    if (!seen.insert({r.cop, r.seed}).second)
      throw SchemaError("line " + std::to_string(line_no) + ": duplicate (cop, seed) row");
    ds.rows.push_back(std::move(r));
  }
  if (!have_header) throw SchemaError("line 1: dataset has no header row");
  return ds;
}

Dataset read_dataset(const std::string& path) { return parse_dataset_csv(csv::read_file(path)); }

}  // namespace hoopt
