#include "hoopt/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "hoopt/csv.hpp"
#include "hoopt/errors.hpp"
#include "hoopt/rng.hpp"

namespace hoopt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  long long i = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), i);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  return i;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t i = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), i);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected a non-negative integer, got '" + v + "'");
  return i;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::string cur;
  std::istringstream ss(v);
  while (std::getline(ss, cur, ',')) out.push_back(to_double(key, trim(cur)));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

AxisRange to_range(const std::string& key, const std::string& v) {
  const auto parts = to_list(key, v);
  if (parts.size() != 3)
    throw ConfigError("key '" + key + "': expected min,max,step");
  return {parts[0], parts[1], parts[2]};
}

std::vector<int> to_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  for (double d : to_list(key, v)) {
    if (d != std::floor(d)) throw ConfigError("key '" + key + "': expected integers");
    out.push_back(static_cast<int>(d));
  }
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;

  auto bad_key = [&](const std::string& key) {
    throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key +
                      "' in section [" + section + "]");
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"network", "propagation", "handover",
                                    "sweep",   "model",       "optimizer"};
      if (std::find_if(std::begin(known), std::end(known),
                       [&](const char* s) { return section == s; }) == std::end(known))
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section +
                          "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                        "' outside any section");

    if (section == "network") {
      if (key == "area_side_m") cfg.net.area_side_m = to_double(key, val);
      else if (key == "macro_cells_per_band") cfg.net.macro_cells_per_band = static_cast<int>(to_int(key, val));
      else if (key == "small_cells") cfg.net.small_cell_count = static_cast<int>(to_int(key, val));
      else if (key == "user_density_per_km2") cfg.net.user_density_per_km2 = to_double(key, val);
      else if (key == "tti_ms") cfg.net.tti_ms = to_double(key, val);
      else if (key == "sim_duration_ms") cfg.net.sim_duration_ms = to_double(key, val);
      else if (key == "measurement_epoch_ms") cfg.net.measurement_epoch_ms = to_double(key, val);
      else if (key == "user_prb_demand") cfg.net.user_prb_demand = static_cast<int>(to_int(key, val));
      else if (key == "user_speeds_kmh") cfg.net.user_speeds_kmh = to_list(key, val);
      else if (key == "master_seed") cfg.net.master_seed = to_u64(key, val);
      else if (key == "macro_tx_dbm") cfg.macro_tx_dbm = to_double(key, val);
      else if (key == "small_tx_dbm") cfg.small_tx_dbm = to_double(key, val);
      else if (key == "macro_height_m") cfg.macro_height_m = to_double(key, val);
      else if (key == "small_height_m") cfg.small_height_m = to_double(key, val);
      else bad_key(key);
    } else if (section == "propagation") {
      if (key == "ple_near") cfg.prop.ple_near = to_double(key, val);
      else if (key == "ple_far") cfg.prop.ple_far = to_double(key, val);
      else if (key == "breakpoint_m") cfg.prop.breakpoint_m = to_double(key, val);
      else if (key == "shadowing_sigma_db") cfg.prop.shadowing_sigma_db = to_double(key, val);
      else if (key == "shadowing_grid_m") cfg.prop.shadowing_grid_m = to_double(key, val);
      else if (key == "shadowing_seed") cfg.prop.shadowing_seed = to_u64(key, val);
      else bad_key(key);
    } else if (section == "handover") {
      if (key == "a3_hyst_db") cfg.ho.a3_hyst_db = to_double(key, val);
      else if (key == "a5_hyst_db") cfg.ho.a5_hyst_db = to_double(key, val);
      else if (key == "a2_ttt_ms") cfg.ho.a2_ttt_ms = to_double(key, val);
      else if (key == "a2_threshold_dbm") cfg.ho.a2_threshold_dbm = to_double(key, val);
      else if (key == "a2_hyst_db") cfg.ho.a2_hyst_db = to_double(key, val);
      else if (key == "qout_dbm") cfg.ho.qout_dbm = to_double(key, val);
      else if (key == "ho_execution_ms") cfg.ho.ho_execution_ms = to_double(key, val);
      else if (key == "default_cio_db") cfg.ho.default_cio_db = to_double(key, val);
      else bad_key(key);
    } else if (section == "sweep") {
      if (key == "a5_ttt_values_ms") cfg.grid.a5_ttt_ms = to_int_list(key, val);
      else if (key == "a3_ttt_values_ms") cfg.grid.a3_ttt_ms = to_int_list(key, val);
      else if (key == "a5_th1_dbm") cfg.grid.a5_th1 = to_range(key, val);
      else if (key == "a5_th2_dbm") cfg.grid.a5_th2 = to_range(key, val);
      else if (key == "a3_off_db") cfg.grid.a3_off = to_range(key, val);
      else if (key == "subsample") cfg.sweep_subsample = static_cast<std::size_t>(to_u64(key, val));
      else if (key == "jobs") cfg.jobs = static_cast<int>(to_int(key, val));
      else bad_key(key);
    } else if (section == "model") {
      if (key == "test_fraction") cfg.test_fraction = to_double(key, val);
      else if (key == "seed") cfg.model_seed = to_u64(key, val);
      else if (key == "tree_max_depth") cfg.hp.tree_max_depth = static_cast<int>(to_int(key, val));
      else if (key == "tree_min_leaf") cfg.hp.tree_min_leaf = static_cast<int>(to_int(key, val));
      else if (key == "forest_trees") cfg.hp.forest_trees = static_cast<int>(to_int(key, val));
      else if (key == "forest_max_features") cfg.hp.forest_max_features = static_cast<int>(to_int(key, val));
      else if (key == "forest_bootstrap") cfg.hp.forest_bootstrap = to_bool(key, val);
      else if (key == "gbt_rounds") cfg.hp.gbt_rounds = static_cast<int>(to_int(key, val));
      else if (key == "gbt_depth") cfg.hp.gbt_depth = static_cast<int>(to_int(key, val));
      else if (key == "gbt_learning_rate") cfg.hp.gbt_learning_rate = to_double(key, val);
      else if (key == "gbt_lambda") cfg.hp.gbt_lambda = to_double(key, val);
      else if (key == "shap_background") cfg.shap_background = static_cast<std::size_t>(to_u64(key, val));
      else bad_key(key);
    } else if (section == "optimizer") {
      if (key == "alpha") cfg.weights.alpha = to_double(key, val);
      else if (key == "beta") cfg.weights.beta = to_double(key, val);
      else if (key == "budget") cfg.schedule.budget = to_u64(key, val);
      else if (key == "initial_temp") cfg.schedule.initial_temp = to_double(key, val);
      else if (key == "final_temp") cfg.schedule.final_temp = to_double(key, val);
      else if (key == "cooling_ratio") cfg.schedule.cooling_ratio = to_double(key, val);
      else if (key == "neighbor_radius") cfg.schedule.neighbor_radius = static_cast<int>(to_int(key, val));
      else if (key == "sa_runs") cfg.sa_runs = static_cast<int>(to_int(key, val));
      else if (key == "load_threshold_pct") {
        const auto list = to_list(key, val);
        if (list.size() != 3) throw ConfigError("key 'load_threshold_pct': expected 3 values");
        std::copy(list.begin(), list.end(), cfg.constraints.load_threshold_pct.begin());
      } else bad_key(key);
    }
  }
  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError("config: " + msg);
  };
  require(net.area_side_m > 0, "network.area_side_m must be positive");
  require(net.macro_cells_per_band > 0, "network.macro_cells_per_band must be positive");
  require(net.macro_cells_per_band % 3 == 0, "network.macro_cells_per_band must be a multiple of 3");
  require(net.small_cell_count >= 0, "network.small_cells must be non-negative");
  require(net.user_density_per_km2 > 0, "network.user_density_per_km2 must be positive");
  require(net.user_count() > 0, "network: user density times area yields zero users");
  require(net.tti_ms > 0, "network.tti_ms must be positive");
  require(net.sim_duration_ms >= net.tti_ms, "network.sim_duration_ms shorter than one TTI");
  require(net.measurement_epoch_ms >= net.tti_ms, "network.measurement_epoch_ms shorter than one TTI");
  require(net.user_prb_demand > 0, "network.user_prb_demand must be positive");
  require(!net.user_speeds_kmh.empty(), "network.user_speeds_kmh must not be empty");
  for (double v : net.user_speeds_kmh) require(v >= 0, "network.user_speeds_kmh must be non-negative");
  require(prop.ple_near > 0 && prop.ple_far > 0, "propagation exponents must be positive");
  require(prop.breakpoint_m > 1.0, "propagation.breakpoint_m must exceed 1 m");
  require(prop.shadowing_sigma_db >= 0, "propagation.shadowing_sigma_db must be non-negative");
  require(prop.shadowing_grid_m > 0, "propagation.shadowing_grid_m must be positive");
  require(ho.ho_execution_ms >= 0, "handover.ho_execution_ms must be non-negative");
  require(ho.a2_ttt_ms >= 0, "handover.a2_ttt_ms must be non-negative");
  require(test_fraction > 0 && test_fraction < 1, "model.test_fraction must be in (0, 1)");
  require(jobs >= 1, "sweep.jobs must be >= 1");
  require(sa_runs >= 1, "optimizer.sa_runs must be >= 1");
  try {
    hp.validate();
    weights.validate();
    constraints.validate();
    schedule.validate();
    (void)build_grid(grid);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) { return parse_config(csv::read_file(path)); }

std::string canonical_config(const RunConfig& cfg) {
  std::ostringstream out;
  auto kv = [&](const char* k, const std::string& v) { out << k << '=' << v << '\n'; };
  auto list = [&](const auto& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ',';
      s += csv::fmt(static_cast<double>(values[i]));
    }
    return s;
  };
  kv("network.area_side_m", csv::fmt(cfg.net.area_side_m));
  kv("network.macro_cells_per_band", csv::fmt(cfg.net.macro_cells_per_band));
  kv("network.small_cells", csv::fmt(cfg.net.small_cell_count));
  kv("network.user_density_per_km2", csv::fmt(cfg.net.user_density_per_km2));
  kv("network.tti_ms", csv::fmt(cfg.net.tti_ms));
  kv("network.sim_duration_ms", csv::fmt(cfg.net.sim_duration_ms));
  kv("network.measurement_epoch_ms", csv::fmt(cfg.net.measurement_epoch_ms));
  kv("network.user_prb_demand", csv::fmt(cfg.net.user_prb_demand));
  kv("network.user_speeds_kmh", list(cfg.net.user_speeds_kmh));
  kv("network.master_seed", csv::fmt(cfg.net.master_seed));
  kv("network.macro_tx_dbm", csv::fmt(cfg.macro_tx_dbm));
  kv("network.small_tx_dbm", csv::fmt(cfg.small_tx_dbm));
  kv("network.macro_height_m", csv::fmt(cfg.macro_height_m));
  kv("network.small_height_m", csv::fmt(cfg.small_height_m));
  kv("propagation.ple_near", csv::fmt(cfg.prop.ple_near));
  kv("propagation.ple_far", csv::fmt(cfg.prop.ple_far));
  kv("propagation.breakpoint_m", csv::fmt(cfg.prop.breakpoint_m));
  kv("propagation.shadowing_sigma_db", csv::fmt(cfg.prop.shadowing_sigma_db));
  kv("propagation.shadowing_grid_m", csv::fmt(cfg.prop.shadowing_grid_m));
  kv("propagation.shadowing_seed", csv::fmt(cfg.prop.shadowing_seed));
  kv("handover.a3_hyst_db", csv::fmt(cfg.ho.a3_hyst_db));
  kv("handover.a5_hyst_db", csv::fmt(cfg.ho.a5_hyst_db));
  kv("handover.a2_ttt_ms", csv::fmt(cfg.ho.a2_ttt_ms));
  kv("handover.a2_threshold_dbm", csv::fmt(cfg.ho.a2_threshold_dbm));
  kv("handover.a2_hyst_db", csv::fmt(cfg.ho.a2_hyst_db));
  kv("handover.qout_dbm", csv::fmt(cfg.ho.qout_dbm));
  kv("handover.ho_execution_ms", csv::fmt(cfg.ho.ho_execution_ms));
  kv("handover.default_cio_db", csv::fmt(cfg.ho.default_cio_db));
  kv("sweep.a5_ttt_values_ms", list(cfg.grid.a5_ttt_ms));
  kv("sweep.a5_th1_dbm", list(std::vector<double>{cfg.grid.a5_th1.lo, cfg.grid.a5_th1.hi, cfg.grid.a5_th1.step}));
  kv("sweep.a5_th2_dbm", list(std::vector<double>{cfg.grid.a5_th2.lo, cfg.grid.a5_th2.hi, cfg.grid.a5_th2.step}));
  kv("sweep.a3_ttt_values_ms", list(cfg.grid.a3_ttt_ms));
  kv("sweep.a3_off_db", list(std::vector<double>{cfg.grid.a3_off.lo, cfg.grid.a3_off.hi, cfg.grid.a3_off.step}));
  kv("sweep.subsample", csv::fmt(static_cast<std::uint64_t>(cfg.sweep_subsample)));
  kv("model.test_fraction", csv::fmt(cfg.test_fraction));
  kv("model.seed", csv::fmt(cfg.model_seed));
  kv("model.tree_max_depth", csv::fmt(cfg.hp.tree_max_depth));
  kv("model.tree_min_leaf", csv::fmt(cfg.hp.tree_min_leaf));
  kv("model.forest_trees", csv::fmt(cfg.hp.forest_trees));
  kv("model.forest_max_features", csv::fmt(cfg.hp.forest_max_features));
  kv("model.forest_bootstrap", cfg.hp.forest_bootstrap ? "true" : "false");
  kv("model.gbt_rounds", csv::fmt(cfg.hp.gbt_rounds));
  kv("model.gbt_depth", csv::fmt(cfg.hp.gbt_depth));
  kv("model.gbt_learning_rate", csv::fmt(cfg.hp.gbt_learning_rate));
  kv("model.gbt_lambda", csv::fmt(cfg.hp.gbt_lambda));
  kv("model.shap_background", csv::fmt(static_cast<std::uint64_t>(cfg.shap_background)));
  kv("optimizer.alpha", csv::fmt(cfg.weights.alpha));
  kv("optimizer.beta", csv::fmt(cfg.weights.beta));
  kv("optimizer.budget", csv::fmt(cfg.schedule.budget));
  kv("optimizer.initial_temp", csv::fmt(cfg.schedule.initial_temp));
  kv("optimizer.final_temp", csv::fmt(cfg.schedule.final_temp));
  kv("optimizer.cooling_ratio", cfg.schedule.cooling_ratio ? csv::fmt(*cfg.schedule.cooling_ratio) : "auto");
  kv("optimizer.neighbor_radius", csv::fmt(cfg.schedule.neighbor_radius));
  kv("optimizer.sa_runs", csv::fmt(cfg.sa_runs));
  kv("optimizer.load_threshold_pct", list(cfg.constraints.load_threshold_pct));
  return out.str();
}

std::string config_hash(const RunConfig& cfg) {
  const std::uint64_t h = fnv1a64(canonical_config(cfg));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hoopt
