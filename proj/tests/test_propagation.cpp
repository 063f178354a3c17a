#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hoopt/sim/propagation.hpp"

using namespace hoopt;

namespace {

PropagationModel no_shadow() {
  PropagationModel p;
  p.shadowing_sigma_db = 0.0;
  return p;
}

BandConfig omni_band(double f_ghz, double tx_dbm = 20.0, double height = 1.5) {
  return {0, f_ghz, 20.0, 106, tx_dbm, height, AntennaKind::omni, 0.0};
}

}  // namespace

TEST_CASE("path gain at the 1 m reference is exactly -FSPL(1m)") {
  const auto prop = no_shadow();
  for (double f : {1.7, 2.1, 3.5}) {
    const auto band = omni_band(f);
    CHECK(path_loss_db(1.0, band, prop) == doctest::Approx(-fspl_1m_db(f)).epsilon(1e-12));
    // Sub-reference distances clamp to 1 m.
    CHECK(path_loss_db(0.2, band, prop) == path_loss_db(1.0, band, prop));
  }
}

TEST_CASE("hand-evaluated dual-slope point at 3.5 GHz") {
  // Independent evaluation of the formula: FSPL(1m) = 20 log10(4 pi f / c),
  // single-slope regime at d = 10 m <= breakpoint.
  const double fspl = 20.0 * std::log10(4.0 * 3.14159265358979323846 * 3.5e9 / 2.998e8);
  const double expected = -(fspl + 10.0 * 2.9 * std::log10(10.0));
  CHECK(fspl == doctest::Approx(43.33).epsilon(2e-4));
  CHECK(expected == doctest::Approx(-72.33).epsilon(2e-4));

  const auto prop = no_shadow();
  CHECK(path_loss_db(10.0, omni_band(3.5), prop) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("both branches agree at the breakpoint") {
  auto prop = no_shadow();
  const auto band = omni_band(2.1);
  // Evaluate the far branch epsilon past d_th and compare with the near
  // branch at d_th; the extra term vanishes at the boundary.
  const double at = path_loss_db(prop.breakpoint_m, band, prop);
  const double just_past = path_loss_db(prop.breakpoint_m * (1.0 + 1e-13), band, prop);
  CHECK(std::abs(at - just_past) < 1e-9);
}

TEST_CASE("path gain strictly decreases with distance") {
  const auto prop = no_shadow();
  const auto band = omni_band(1.7);
  double prev = path_loss_db(1.0, band, prop);
  for (double d = 2.0; d < 2000.0; d *= 1.3) {
    const double cur = path_loss_db(d, band, prop);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("invalid distances are rejected") {
  const auto prop = no_shadow();
  const auto band = omni_band(1.7);
  CHECK_THROWS_AS(path_loss_db(0.0, band, prop), std::invalid_argument);
  CHECK_THROWS_AS(path_loss_db(-5.0, band, prop), std::invalid_argument);
  CHECK_THROWS_AS(path_loss_db(std::nan(""), band, prop), std::invalid_argument);
}

TEST_CASE("tri-sector boresight beats off-boresight at equal distance") {
  BandConfig band{0, 1.7, 10.0, 52, 35.0, 1.5, AntennaKind::tri_sector, 14.0};
  Cell cell{0, 0, 0.0, 0.0, 0.0, 0};  // boresight towards +y
  const auto prop = no_shadow();
  const double on = rsrp_dbm(cell, band, 0.0, 100.0, prop, nullptr);
  const double off = rsrp_dbm(cell, band, 100.0, 0.0, prop, nullptr);
  const double back = rsrp_dbm(cell, band, 0.0, -100.0, prop, nullptr);
  CHECK(on > off);
  CHECK(off > back);
  CHECK(on - back == doctest::Approx(30.0));  // pattern floor
}

TEST_CASE("rsrp composes tx power and path gain at the reference point") {
  // 20 dBm omni cell at user height, 1 m away, no shadowing.
  const auto prop = no_shadow();
  const auto band = omni_band(3.5, 20.0);
  Cell cell{0, 0, 0.0, 0.0, 0.0, 0};
  const double v = rsrp_dbm(cell, band, 1.0, 0.0, prop, nullptr);
  CHECK(v == doctest::Approx(20.0 - fspl_1m_db(3.5)).epsilon(1e-12));

  // Composition with the hand-evaluated 10 m path loss.
  const double v10 = rsrp_dbm(cell, band, 10.0, 0.0, prop, nullptr);
  CHECK(v10 == doctest::Approx(20.0 + path_loss_db(10.0, band, prop)).epsilon(1e-12));
  CHECK(v10 == doctest::Approx(-52.33).epsilon(2e-4));
}

TEST_CASE("zero-sigma shadowing is zero everywhere") {
  ShadowingMap map(2000.0, 10.0, 0.0, 123, 0);
  for (double x = 0.0; x <= 2000.0; x += 333.3)
    for (double y = 0.0; y <= 2000.0; y += 333.3) CHECK(map.at(x, y) == 0.0);
}

TEST_CASE("shadowing is deterministic and boundary-clamped") {
  ShadowingMap a(2000.0, 10.0, 6.9, 77, 3);
  ShadowingMap b(2000.0, 10.0, 6.9, 77, 3);
  CHECK(a.at(123.4, 987.6) == b.at(123.4, 987.6));
  CHECK(a.at(-50.0, 100.0) == a.at(0.0, 100.0));
  CHECK(a.at(100.0, 5000.0) == a.at(100.0, 2000.0));
}

TEST_CASE("grid-node sample std matches sigma within 5%") {
  const double sigma = 6.9;
  double sum = 0.0, sum2 = 0.0;
  std::size_t n = 0;
  for (int cell = 0; cell < 3; ++cell) {
    ShadowingMap map(2000.0, 10.0, sigma, 2024, cell);
    for (double v : map.nodes()) {
      sum += v;
      sum2 += v * v;
      ++n;
    }
  }
  CHECK(n > 100000);
  const double mean = sum / n;
  const double std = std::sqrt(sum2 / n - mean * mean);
  CHECK(std > sigma * 0.95);
  CHECK(std < sigma * 1.05);
}

TEST_CASE("maps of distinct cells are uncorrelated") {
  ShadowingMap a(2000.0, 10.0, 6.9, 42, 0);
  ShadowingMap b(2000.0, 10.0, 6.9, 42, 1);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.nodes().size(); ++i) {
    sab += a.nodes()[i] * b.nodes()[i];
    saa += a.nodes()[i] * a.nodes()[i];
    sbb += b.nodes()[i] * b.nodes()[i];
  }
  const double corr = sab / std::sqrt(saa * sbb);
  CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("interpolation is continuous across grid cells") {
  ShadowingMap map(100.0, 10.0, 6.9, 5, 0);
  // Values a hair on either side of a node coincide with the node value.
  const double at_node = map.at(50.0, 50.0);
  CHECK(map.at(50.0 - 1e-9, 50.0) == doctest::Approx(at_node).epsilon(1e-6));
  CHECK(map.at(50.0 + 1e-9, 50.0) == doctest::Approx(at_node).epsilon(1e-6));
}
