#pragma once

#include <algorithm>

namespace hoopt {

/// A3 entering condition: target beats serving by the offset (strict).
inline bool a3_entering(double m_target_dbm, double m_serving_dbm, double cio_db, double hyst_db,
                        double offset_db) {
  return m_target_dbm + cio_db - hyst_db > m_serving_dbm + offset_db;
}

/// A5 entering condition: serving below threshold1 AND target above
/// threshold2, both strict.
inline bool a5_entering(double m_serving_dbm, double m_target_dbm, double cio_db, double hyst_db,
                        double th1_dbm, double th2_dbm) {
  return (m_serving_dbm + hyst_db < th1_dbm) && (m_target_dbm + cio_db - hyst_db > th2_dbm);
}

/// Time-to-trigger accumulator for one (user, event, target) combination.
struct EventTimerState {
  double elapsed_ms = 0.0;
  bool armed = false;

  void reset() {
    elapsed_ms = 0.0;
    armed = false;
  }
};

/// Advance a TTT timer by one TTI. The entering condition accumulates
/// elapsed time; a single false tick resets it. Fires exactly on the tick
/// where elapsed crosses ttt; elapsed then saturates at ttt so a held
/// condition cannot re-fire.
inline bool tick_event(EventTimerState& t, bool entering, double dt_ms, double ttt_ms) {
  if (!entering) {
    t.reset();
    return false;
  }
  const double prev = t.elapsed_ms;
  t.armed = true;
  t.elapsed_ms = std::min(prev + dt_ms, ttt_ms);
  return prev < ttt_ms && prev + dt_ms >= ttt_ms;
}

}  // namespace hoopt
