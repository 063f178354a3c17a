#pragma once

#include <array>
#include <map>
#include <string>
#include <tuple>
#include <utility>

namespace hoopt {

/// The five tunable handover parameters; the optimization variable.
struct CopVector {
  int a5_ttt_ms = 64;
  double a5_th1_dbm = -96.0;
  double a5_th2_dbm = -96.0;
  int a3_ttt_ms = 64;
  double a3_off_db = 0.0;

  auto tie() const { return std::tie(a5_ttt_ms, a5_th1_dbm, a5_th2_dbm, a3_ttt_ms, a3_off_db); }
  bool operator==(const CopVector& o) const { return tie() == o.tie(); }
  bool operator<(const CopVector& o) const { return tie() < o.tie(); }

  std::array<double, 5> features() const {
    return {static_cast<double>(a5_ttt_ms), a5_th1_dbm, a5_th2_dbm,
            static_cast<double>(a3_ttt_ms), a3_off_db};
  }
  std::string str() const;
};

inline const std::array<const char*, 5> kCopFeatureNames = {
    "a5_ttt_ms", "a5_th1_dbm", "a5_th2_dbm", "a3_ttt_ms", "a3_off_db"};

/// 3GPP TTT value set shared by A3 and A5.
inline const std::array<int, 7> kTttValuesMs = {64, 128, 192, 256, 384, 512, 640};

constexpr double kThresholdMinDbm = -116.0;
constexpr double kThresholdMaxDbm = -96.0;
constexpr double kOffsetMinDb = 0.0;
constexpr double kOffsetMaxDb = 10.0;

/// True when every field is inside its standardized range (TTT in the value
/// set, thresholds/offset inside their bounds; grid steps are a sweep
/// concern, not validated here).
bool cop_in_range(const CopVector& cop);

/// Throws std::invalid_argument naming the offending field.
void validate_cop(const CopVector& cop);

/// Fixed handover machinery settings (everything that is not swept).
struct HandoverConfig {
  double a3_hyst_db = 1.0;
  double a5_hyst_db = 1.0;
  double a2_ttt_ms = 64.0;
  double a2_threshold_dbm = -90.0;
  double a2_hyst_db = 1.0;
  double qout_dbm = -118.0;        // radio-failure threshold
  double ho_execution_ms = 50.0;
  double default_cio_db = 0.0;
  std::map<std::pair<int, int>, double> cio_db;  // (serving, target) overrides

  double cio(int serving, int target) const {
    auto it = cio_db.find({serving, target});
    return it == cio_db.end() ? default_cio_db : it->second;
  }
};

}  // namespace hoopt
