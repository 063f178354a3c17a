#include <doctest.h>

#include <functional>

#include "hoopt/sim/runner.hpp"

using namespace hoopt;

namespace {

PropagationModel no_shadow() {
  PropagationModel p;
  p.shadowing_sigma_db = 0.0;
  return p;
}

// One omni cell per band; measurements are scripted by the tests.
Scenario two_band_scenario() {
  NetworkConfig net;
  net.area_side_m = 2000.0;
  std::vector<BandConfig> bands = {
      {0, 1.7, 10.0, 52, 35.0, 1.5, AntennaKind::omni, 0.0},
      {1, 2.1, 15.0, 78, 35.0, 1.5, AntennaKind::omni, 0.0},
  };
  std::vector<Cell> cells = {{0, 0, 0.0, 0.0, 0.0, 0}, {1, 1, 100.0, 0.0, 0.0, 0}};
  return make_scenario(net, no_shadow(), std::move(bands), std::move(cells));
}

}  // namespace

TEST_CASE("a2 gap gates a5 and the trigger chain lands on the expected tick") {
  Scenario sc = two_band_scenario();
  CopVector cop;  // ttt 64/64, th1 -96, th2 -96, off 0
  HandoverConfig cfg;
  HandoverEngine eng(sc, cop, cfg, true);
  eng.reset_users(1);
  User u;
  u.user_id = 0;
  u.serving_cell = 0;

  // Serving pinned at -100 dBm, cross-band target at -53 dBm:
  //   A2 entering (-100 + 1 < -90) from tick 1, gap active at tick 64;
  //   A5 entering (-99 < -96 and -54 > -96) accumulates from tick 64,
  //   fires at tick 127; 50 ms execution completes at tick 177.
  auto measure = [&](int cell) { return cell == 0 ? -100.0 : -53.0; };

  for (int tick = 1; tick <= 300; ++tick) {
    eng.tick_user(u, tick, 1.0, measure);
    if (tick < 64) CHECK_FALSE(eng.gap_active(0));
    if (tick == 64) CHECK(eng.gap_active(0));
    if (tick == 126) CHECK_FALSE(eng.executing(0));
    if (tick == 127) CHECK(eng.executing(0));
    if (tick < 177) CHECK(u.serving_cell == 0);
  }

  CHECK(u.serving_cell == 1);
  CHECK(eng.ledger().a5_success == 1);
  CHECK(eng.ledger().hos == 1);
  CHECK(eng.ledger().hof == 0);
  REQUIRE(eng.events().size() == 1);
  CHECK(eng.events()[0].time_ms == 177.0);
  CHECK(eng.events()[0].event == HoEventKind::a5);
  CHECK(eng.events()[0].source_cell == 0);
  CHECK(eng.events()[0].target_cell == 1);
}

TEST_CASE("strong serving keeps the gap closed forever") {
  Scenario sc = two_band_scenario();
  CopVector cop;
  HandoverConfig cfg;
  HandoverEngine eng(sc, cop, cfg, false);
  eng.reset_users(1);
  User u;
  u.user_id = 0;
  u.serving_cell = 0;
  auto measure = [&](int cell) { return cell == 0 ? -85.0 : -40.0; };
  for (int tick = 1; tick <= 2000; ++tick) {
    eng.tick_user(u, tick, 1.0, measure);
    CHECK_FALSE(eng.gap_active(0));
  }
  CHECK(eng.ledger().attempts() == 0);  // a5 frozen without the gap
}

TEST_CASE("a2 held 63 ms then broken resets the gap timer") {
  Scenario sc = two_band_scenario();
  CopVector cop;
  HandoverConfig cfg;
  HandoverEngine eng(sc, cop, cfg, false);
  eng.reset_users(1);
  User u;
  u.user_id = 0;
  u.serving_cell = 0;
  int tick = 0;
  auto weak = [&](int cell) { return cell == 0 ? -100.0 : -53.0; };
  auto strong = [&](int cell) { return cell == 0 ? -80.0 : -53.0; };
  for (int i = 0; i < 63; ++i) eng.tick_user(u, ++tick, 1.0, weak);
  CHECK_FALSE(eng.gap_active(0));
  eng.tick_user(u, ++tick, 1.0, strong);  // breaks the streak
  CHECK_FALSE(eng.gap_active(0));
  for (int i = 0; i < 63; ++i) eng.tick_user(u, ++tick, 1.0, weak);
  CHECK_FALSE(eng.gap_active(0));  // needs the full 64 ms again
  eng.tick_user(u, ++tick, 1.0, weak);
  CHECK(eng.gap_active(0));
}

TEST_CASE("serving dropout during execution books a too-late failure") {
  Scenario sc = two_band_scenario();
  CopVector cop;
  HandoverConfig cfg;
  HandoverEngine eng(sc, cop, cfg, true);
  eng.reset_users(1);
  User u;
  u.user_id = 0;
  u.serving_cell = 0;
  int tick = 0;
  auto measure = [&](int cell) {
    if (cell != 0) return -53.0;
    return tick <= 130 ? -100.0 : -130.0;  // command lost mid-execution
  };
  for (tick = 1; tick <= 131; ++tick) eng.tick_user(u, tick, 1.0, std::ref(measure));

  CHECK(u.serving_cell == 0);  // stays on the source
  CHECK(eng.ledger().hof == 1);
  CHECK(eng.ledger().too_late == 1);
  CHECK(eng.ledger().a5_failure == 1);
  REQUIRE(eng.events().size() == 1);
  CHECK(eng.events()[0].outcome == HoOutcome::failure_too_late);
  CHECK(eng.events()[0].time_ms == 131.0);
}

TEST_CASE("weak target at completion books a too-early failure") {
  Scenario sc = two_band_scenario();
  CopVector cop;
  HandoverConfig cfg;
  HandoverEngine eng(sc, cop, cfg, true);
  eng.reset_users(1);
  User u;
  u.user_id = 0;
  u.serving_cell = 0;
  int tick = 0;
  auto measure = [&](int cell) {
    if (cell == 0) return -100.0;
    return tick <= 150 ? -53.0 : -125.0;  // target collapses before completion
  };
  for (tick = 1; tick <= 177; ++tick) eng.tick_user(u, tick, 1.0, std::ref(measure));

  CHECK(u.serving_cell == 0);
  CHECK(eng.ledger().too_early == 1);
  REQUIRE(eng.events().size() == 1);
  CHECK(eng.events()[0].outcome == HoOutcome::failure_too_early);
}

TEST_CASE("two-cell crossover walk yields exactly one successful A3 handover") {
  // Two same-band cells; the user walks A -> B through the midpoint in a
  // shadowing-free field, so the RSRP curves cross once and A3 fires once.
  NetworkConfig net;
  net.area_side_m = 2000.0;
  net.sim_duration_ms = 30000.0;
  std::vector<BandConfig> bands = {{0, 1.7, 10.0, 52, 35.0, 30.0, AntennaKind::omni, 0.0}};
  std::vector<Cell> cells = {{0, 0, 500.0, 1000.0, 0.0, 0}, {1, 0, 1500.0, 1000.0, 0.0, 0}};
  Scenario sc = make_scenario(net, no_shadow(), std::move(bands), std::move(cells));

  User u;
  u.user_id = 0;
  u.x_m = 400.0;
  u.y_m = 1000.0;
  u.wp_x_m = 1600.0;
  u.wp_y_m = 1000.0;
  u.speed_kmh = 120.0;  // 33.3 m/s, reaches x=1400 in 30 s: no waypoint redraw

  CopVector cop;
  HandoverConfig cfg;
  RunOptions opt;
  opt.keep_event_log = true;
  RunResult res = run_simulation_with_users(sc, cop, cfg, {u}, 5, opt);

  CHECK(res.ledger.hos == 1);
  CHECK(res.ledger.hof == 0);
  CHECK(res.ledger.a3_success == 1);
  CHECK(res.ledger.a5_success == 0);
  REQUIRE(res.events.size() == 1);
  CHECK(res.events[0].event == HoEventKind::a3);
  CHECK(res.events[0].source_cell == 0);
  CHECK(res.events[0].target_cell == 1);
  // The crossover sits at the midpoint; 1 dB hysteresis plus TTT pushes
  // the handover a little past x = 1000, i.e. past t = 18 s.
  CHECK(res.events[0].time_ms > 18000.0);
  CHECK(res.events[0].time_ms < 22000.0);
  CHECK(res.kpis.hosr_pct == 100.0);
}

TEST_CASE("an unreachable a3 offset suppresses all intra-band handovers") {
  NetworkConfig net;
  net.area_side_m = 2000.0;
  net.sim_duration_ms = 30000.0;
  std::vector<BandConfig> bands = {{0, 1.7, 10.0, 52, 35.0, 30.0, AntennaKind::omni, 0.0}};
  std::vector<Cell> cells = {{0, 0, 500.0, 1000.0, 0.0, 0}, {1, 0, 1500.0, 1000.0, 0.0, 0}};
  Scenario sc = make_scenario(net, no_shadow(), std::move(bands), std::move(cells));

  User u;
  u.user_id = 0;
  u.x_m = 400.0;
  u.y_m = 1000.0;
  u.wp_x_m = 1600.0;
  u.wp_y_m = 1000.0;
  u.speed_kmh = 120.0;

  CopVector cop;
  cop.a3_off_db = 1e9;  // off-grid proxy for an unreachable offset
  HandoverConfig cfg;
  RunResult res = run_simulation_with_users(sc, cop, cfg, {u}, 5);
  CHECK(res.ledger.a3_success + res.ledger.a3_failure == 0);
  CHECK(res.ledger.attempts() == 0);
}

TEST_CASE("ledger totals match the per-event breakdown on a busy run") {
  NetworkConfig net;
  net.sim_duration_ms = 4000.0;
  PropagationModel prop;  // shadowing on
  Scenario sc = build_default_scenario(net, prop, default_bands());
  CopVector cop;
  HandoverConfig cfg;
  RunOptions opt;
  opt.keep_event_log = true;
  RunResult res = run_simulation(sc, cop, cfg, 77, opt);

  CHECK(res.ledger.hos + res.ledger.hof == res.events.size());
  CHECK(res.ledger.hos == res.ledger.a3_success + res.ledger.a5_success);
  CHECK(res.ledger.hof == res.ledger.a3_failure + res.ledger.a5_failure);
  CHECK(res.ledger.hof == res.ledger.too_late + res.ledger.too_early);
  for (const auto& e : res.events) CHECK(e.source_cell != e.target_cell);
}
