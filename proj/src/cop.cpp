#include "hoopt/ho/cop.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "hoopt/csv.hpp"

namespace hoopt {

std::string CopVector::str() const {
  std::ostringstream out;
  out << "(a5_ttt=" << a5_ttt_ms << "ms, a5_th1=" << csv::fmt(a5_th1_dbm)
      << "dBm, a5_th2=" << csv::fmt(a5_th2_dbm) << "dBm, a3_ttt=" << a3_ttt_ms
      << "ms, a3_off=" << csv::fmt(a3_off_db) << "dB)";
  return out.str();
}

bool cop_in_range(const CopVector& cop) {
  auto valid_ttt = [](int v) {
    return std::find(kTttValuesMs.begin(), kTttValuesMs.end(), v) != kTttValuesMs.end();
  };
  return valid_ttt(cop.a5_ttt_ms) && valid_ttt(cop.a3_ttt_ms) &&
         cop.a5_th1_dbm >= kThresholdMinDbm && cop.a5_th1_dbm <= kThresholdMaxDbm &&
         cop.a5_th2_dbm >= kThresholdMinDbm && cop.a5_th2_dbm <= kThresholdMaxDbm &&
         cop.a3_off_db >= kOffsetMinDb && cop.a3_off_db <= kOffsetMaxDb;
}

void validate_cop(const CopVector& cop) {
  auto valid_ttt = [](int v) {
    return std::find(kTttValuesMs.begin(), kTttValuesMs.end(), v) != kTttValuesMs.end();
  };
  if (!valid_ttt(cop.a5_ttt_ms))
    throw std::invalid_argument("a5_ttt_ms not in the TTT value set: " + std::to_string(cop.a5_ttt_ms));
  if (!valid_ttt(cop.a3_ttt_ms))
    throw std::invalid_argument("a3_ttt_ms not in the TTT value set: " + std::to_string(cop.a3_ttt_ms));
  if (cop.a5_th1_dbm < kThresholdMinDbm || cop.a5_th1_dbm > kThresholdMaxDbm)
    throw std::invalid_argument("a5_th1_dbm outside [-116, -96]: " + csv::fmt(cop.a5_th1_dbm));
  if (cop.a5_th2_dbm < kThresholdMinDbm || cop.a5_th2_dbm > kThresholdMaxDbm)
    throw std::invalid_argument("a5_th2_dbm outside [-116, -96]: " + csv::fmt(cop.a5_th2_dbm));
  if (cop.a3_off_db < kOffsetMinDb || cop.a3_off_db > kOffsetMaxDb)
    throw std::invalid_argument("a3_off_db outside [0, 10]: " + csv::fmt(cop.a3_off_db));
}

}  // namespace hoopt
