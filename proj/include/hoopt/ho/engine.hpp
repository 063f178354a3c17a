#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hoopt/ho/cop.hpp"
#include "hoopt/ho/events.hpp"
#include "hoopt/sim/topology.hpp"

namespace hoopt {

enum class HoEventKind { a3, a5 };
enum class HoOutcome { success, failure_too_late, failure_too_early };

struct HandoverEvent {
  double time_ms = 0.0;
  int user_id = -1;
  HoEventKind event = HoEventKind::a3;
  int source_cell = -1;
  int target_cell = -1;
  HoOutcome outcome = HoOutcome::success;
};

struct HandoverLedger {
  std::uint64_t hos = 0;
  std::uint64_t hof = 0;
  std::uint64_t a3_success = 0, a3_failure = 0;
  std::uint64_t a5_success = 0, a5_failure = 0;
  std::uint64_t too_late = 0, too_early = 0;

  void record(HoEventKind ev, HoOutcome out) {
    const bool ok = out == HoOutcome::success;
    (ok ? hos : hof)++;
    if (ev == HoEventKind::a3) (ok ? a3_success : a3_failure)++;
    else (ok ? a5_success : a5_failure)++;
    if (out == HoOutcome::failure_too_late) too_late++;
    if (out == HoOutcome::failure_too_early) too_early++;
  }

  void merge(const HandoverLedger& o) {
    hos += o.hos; hof += o.hof;
    a3_success += o.a3_success; a3_failure += o.a3_failure;
    a5_success += o.a5_success; a5_failure += o.a5_failure;
    too_late += o.too_late; too_early += o.too_early;
  }

  std::uint64_t attempts() const { return hos + hof; }
};

/// Per-user measurement event state machine: A2 gates the inter-frequency
/// measurement gap, A3 handles same-band targets, A5 cross-band targets.
/// At most one handover is in flight per user; during execution the radio
/// links are checked against qout and the outcome is booked exactly once.
///
/// Candidate rule: per event and TTI, the strongest measured cell under the
/// event's band constraint (ties to the lowest cell_id); a candidate switch
/// resets that event's timer, so an armed timer always means the entering
/// condition held against the same target since arming.
class HandoverEngine {
 public:
  HandoverEngine(const Scenario& sc, const CopVector& cop, const HandoverConfig& cfg,
                 bool keep_event_log = false)
      : sc_(sc), cop_(cop), cfg_(cfg), keep_log_(keep_event_log),
        states_(static_cast<std::size_t>(sc.net.user_count())) {}

  /// Resize for a non-default user population (toy scenarios).
  void reset_users(std::size_t n) { states_.assign(n, UserState{}); }

  const HandoverLedger& ledger() const { return ledger_; }
  const std::vector<HandoverEvent>& events() const { return events_; }

  bool gap_active(int user_id) const {
    const auto& s = states_[user_id];
    return s.a2.armed && s.a2.elapsed_ms >= cfg_.a2_ttt_ms;
  }
  bool executing(int user_id) const { return states_[user_id].executing; }

  /// Advance one user by one TTI. `measure(cell_id)` returns the user's
  /// current RSRP from that cell in dBm.
  template <class MeasureFn>
  void tick_user(User& u, double time_ms, double dt_ms, MeasureFn&& measure) {
    UserState& st = states_[u.user_id];

    if (st.executing) {
      if (measure(u.serving_cell) < cfg_.qout_dbm) {
        finish(u, time_ms, st, HoOutcome::failure_too_late);
        return;
      }
      st.exec_elapsed_ms += dt_ms;
      if (st.exec_elapsed_ms >= cfg_.ho_execution_ms) {
        if (measure(st.exec_target) < cfg_.qout_dbm) {
          finish(u, time_ms, st, HoOutcome::failure_too_early);
        } else {
          u.serving_cell = st.exec_target;
          finish(u, time_ms, st, HoOutcome::success);
        }
      }
      return;
    }

    const double serving = measure(u.serving_cell);
    const int serving_band = sc_.cells[u.serving_cell].band_id;

    tick_event(st.a2, serving + cfg_.a2_hyst_db < cfg_.a2_threshold_dbm, dt_ms, cfg_.a2_ttt_ms);

    // A3: strongest same-band neighbour.
    int c3 = strongest(u, measure, serving_band, true);
    if (c3 >= 0) {
      if (st.a3_target != c3) { st.a3.reset(); st.a3_target = c3; }
      const bool entering = a3_entering(measure(c3), serving, cfg_.cio(u.serving_cell, c3),
                                        cfg_.a3_hyst_db, cop_.a3_off_db);
      if (tick_event(st.a3, entering, dt_ms, cop_.a3_ttt_ms)) {
        start_execution(u, st, c3, HoEventKind::a3);
        return;
      }
    } else {
      st.a3.reset();
      st.a3_target = -1;
    }

    // A5: needs the measurement gap; timers freeze at zero without it.
    if (gap_active(u.user_id)) {
      int c5 = strongest(u, measure, serving_band, false);
      if (c5 >= 0) {
        if (st.a5_target != c5) { st.a5.reset(); st.a5_target = c5; }
        const bool entering = a5_entering(serving, measure(c5), cfg_.cio(u.serving_cell, c5),
                                          cfg_.a5_hyst_db, cop_.a5_th1_dbm, cop_.a5_th2_dbm);
        if (tick_event(st.a5, entering, dt_ms, cop_.a5_ttt_ms))
          start_execution(u, st, c5, HoEventKind::a5);
      } else {
        st.a5.reset();
        st.a5_target = -1;
      }
    } else {
      st.a5.reset();
      st.a5_target = -1;
    }
  }

 private:
  struct UserState {
    EventTimerState a2, a3, a5;
    int a3_target = -1;
    int a5_target = -1;
    bool executing = false;
    int exec_target = -1;
    int exec_source = -1;
    HoEventKind exec_event = HoEventKind::a3;
    double exec_elapsed_ms = 0.0;

    void reset_timers() {
      a2.reset(); a3.reset(); a5.reset();
      a3_target = a5_target = -1;
    }
  };

  template <class MeasureFn>
  int strongest(const User& u, MeasureFn&& measure, int serving_band, bool same_band) const {
    int best = -1;
    double best_rsrp = 0.0;
    if (same_band) {
      for (int c : sc_.band_cells[serving_band]) {
        if (c == u.serving_cell) continue;
        double m = measure(c);
        if (best < 0 || m > best_rsrp) { best = c; best_rsrp = m; }
      }
    } else {
      for (std::size_t b = 0; b < sc_.band_cells.size(); ++b) {
        if (static_cast<int>(b) == serving_band) continue;
        for (int c : sc_.band_cells[b]) {
          double m = measure(c);
          if (best < 0 || m > best_rsrp) { best = c; best_rsrp = m; }
        }
      }
    }
    return best;
  }

  void start_execution(User& u, UserState& st, int target, HoEventKind ev) {
    if (target == u.serving_cell)
      throw std::logic_error("handover target equals serving cell (trigger-logic bug)");
    st.reset_timers();
    st.executing = true;
    st.exec_target = target;
    st.exec_source = u.serving_cell;
    st.exec_event = ev;
    st.exec_elapsed_ms = 0.0;
  }

  void finish(User& u, double time_ms, UserState& st, HoOutcome out) {
    ledger_.record(st.exec_event, out);
    if (keep_log_)
      events_.push_back({time_ms, u.user_id, st.exec_event, st.exec_source, st.exec_target, out});
    st.executing = false;
    st.exec_target = -1;
    st.reset_timers();
  }

  const Scenario& sc_;
  CopVector cop_;
  HandoverConfig cfg_;
  bool keep_log_;
  std::vector<UserState> states_;
  HandoverLedger ledger_;
  std::vector<HandoverEvent> events_;
};

}  // namespace hoopt
