#include "hoopt/sim/runner.hpp"

#include <cmath>
#include <sstream>

#include "hoopt/csv.hpp"
#include "hoopt/errors.hpp"
#include "hoopt/sim/mobility.hpp"

namespace hoopt {

namespace {

// Lazy per-TTI RSRP cache: only cells the engine actually asks about are
// evaluated, at most once per (user, cell, tick).
struct MeasureCache {
  const Scenario& sc;
  std::vector<double> value;       // user * n_cells + cell
  std::vector<std::uint32_t> stamp;
  std::uint32_t now = 0;
  std::size_t n_cells;

  MeasureCache(const Scenario& s, std::size_t n_users)
      : sc(s),
        value(n_users * s.cells.size()),
        stamp(n_users * s.cells.size(), 0),
        n_cells(s.cells.size()) {}

  void new_tick() { ++now; }

  double get(const User& u, int cell) {
    const std::size_t k = static_cast<std::size_t>(u.user_id) * n_cells + cell;
    if (stamp[k] != now) {
      value[k] = sc.measure_rsrp(cell, u.x_m, u.y_m);
      stamp[k] = now;
    }
    return value[k];
  }
};

}  // namespace

RunResult run_simulation(const Scenario& sc, const CopVector& cop, const HandoverConfig& cfg,
                         std::uint64_t run_seed, const RunOptions& opt) {
  if (sc.net.user_count() <= 0) throw ConfigError("run_simulation: user count is zero");
  return run_simulation_with_users(sc, cop, cfg, init_users(sc.net, run_seed), run_seed, opt);
}

RunResult run_simulation_with_users(const Scenario& sc, const CopVector& cop,
                                    const HandoverConfig& cfg, std::vector<User> users,
                                    std::uint64_t run_seed, const RunOptions& opt) {
  if (sc.cells.empty()) throw ConfigError("run_simulation: scenario has no cells");
  if (users.empty()) throw ConfigError("run_simulation: user count is zero");

  std::vector<Rng> user_rng;
  user_rng.reserve(users.size());
  for (const auto& u : users)
    user_rng.emplace_back(substream_seed(run_seed, "mobility", static_cast<std::uint64_t>(u.user_id)));

  HandoverEngine engine(sc, cop, cfg, opt.keep_event_log);
  engine.reset_users(users.size());
  MeasureCache cache(sc, users.size());

  // Initial attach: strongest cell over all bands (ties to lowest id).
  cache.new_tick();
  for (auto& u : users) {
    int best = 0;
    double best_rsrp = cache.get(u, 0);
    for (std::size_t c = 1; c < sc.cells.size(); ++c) {
      double m = cache.get(u, static_cast<int>(c));
      if (m > best_rsrp) { best = static_cast<int>(c); best_rsrp = m; }
    }
    u.serving_cell = best;
  }

  const double dt = sc.net.tti_ms;
  const auto n_ticks = static_cast<std::uint64_t>(std::llround(sc.net.sim_duration_ms / dt));
  const auto epoch_ticks =
      std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(sc.net.measurement_epoch_ms / dt)));

  std::vector<double> util_sum(sc.cells.size(), 0.0);
  std::vector<int> attach_count(sc.cells.size(), 0);
  std::vector<double> edge_samples;
  edge_samples.reserve(users.size() * (n_ticks / epoch_ticks + 1));

  for (std::uint64_t tick = 1; tick <= n_ticks; ++tick) {
    const double t_ms = static_cast<double>(tick) * dt;
    cache.new_tick();

    for (auto& u : users) step_mobility(u, dt, sc.net.area_side_m, user_rng[u.user_id]);
    for (auto& u : users) engine.tick_user(u, t_ms, dt, [&](int c) { return cache.get(u, c); });

    // PRB accounting: cells allocate min(sum of demands, N) each TTI.
    std::fill(attach_count.begin(), attach_count.end(), 0);
    for (const auto& u : users) attach_count[u.serving_cell] += u.prb_demand;
    for (std::size_t c = 0; c < sc.cells.size(); ++c) {
      const int total = sc.bands[sc.cells[c].band_id].total_prbs;
      util_sum[c] += static_cast<double>(std::min(attach_count[c], total)) / total;
    }

    if (tick % epoch_ticks == 0)
      for (auto& u : users) edge_samples.push_back(cache.get(u, u.serving_cell));
  }

  RunResult res;
  res.ledger = engine.ledger();
  res.events = engine.events();
  res.cell_utilization.resize(sc.cells.size());
  for (std::size_t c = 0; c < sc.cells.size(); ++c)
    res.cell_utilization[c] = util_sum[c] / static_cast<double>(n_ticks);

  res.kpis.band_loads.resize(sc.bands.size());
  for (std::size_t b = 0; b < sc.bands.size(); ++b) {
    std::vector<double> utils;
    utils.reserve(sc.band_cells[b].size());
    for (int c : sc.band_cells[b]) utils.push_back(res.cell_utilization[c]);
    res.kpis.band_loads[b] = utils.empty() ? 0.0 : band_load(utils);
  }
  res.kpis.load_factor_pct = load_factor(res.kpis.band_loads);
  res.kpis.hosr_pct = hosr(res.ledger.hos, res.ledger.hof);
  res.kpis.edge_rsrp_dbm = edge_rsrp_mean(edge_samples);
  return res;
}

std::string event_log_csv(const std::vector<HandoverEvent>& events) {
  std::ostringstream out;
  out << "time_ms,user_id,event,source_cell,target_cell,outcome,cause\n";
  for (const auto& e : events) {
    out << csv::fmt(e.time_ms) << ',' << e.user_id << ','
        << (e.event == HoEventKind::a3 ? "A3" : "A5") << ',' << e.source_cell << ','
        << e.target_cell << ',' << (e.outcome == HoOutcome::success ? "success" : "failure")
        << ',';
    switch (e.outcome) {
      case HoOutcome::success: out << "-"; break;
      case HoOutcome::failure_too_late: out << "too_late"; break;
      case HoOutcome::failure_too_early: out << "too_early"; break;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace hoopt
