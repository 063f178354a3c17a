#include <doctest.h>

#include "hoopt/config.hpp"
#include "hoopt/errors.hpp"

using namespace hoopt;

TEST_CASE("defaults reproduce the reference deployment") {
  RunConfig cfg;
  cfg.validate();

  const auto bands = cfg.bands();
  REQUIRE(bands.size() == 3);
  CHECK(bands[0].carrier_ghz == 1.7);
  CHECK(bands[0].bandwidth_mhz == 10.0);
  CHECK(bands[0].total_prbs == 52);
  CHECK(bands[0].tx_dbm == 35.0);
  CHECK(bands[0].antenna_height_m == 30.0);
  CHECK(bands[0].antenna == AntennaKind::tri_sector);
  CHECK(bands[1].carrier_ghz == 2.1);
  CHECK(bands[1].bandwidth_mhz == 15.0);
  CHECK(bands[1].total_prbs == 78);
  CHECK(bands[2].carrier_ghz == 3.5);
  CHECK(bands[2].bandwidth_mhz == 20.0);
  CHECK(bands[2].total_prbs == 106);
  CHECK(bands[2].tx_dbm == 20.0);
  CHECK(bands[2].antenna_height_m == 20.0);
  CHECK(bands[2].antenna == AntennaKind::omni);

  CHECK(cfg.net.area_km2() == doctest::Approx(4.0));
  CHECK(cfg.net.user_density_per_km2 == 15.0);
  CHECK(cfg.net.user_count() == 60);
  CHECK(cfg.net.user_speeds_kmh == std::vector<double>{3.0, 60.0, 120.0, 240.0});
  CHECK(cfg.net.tti_ms == 1.0);
  CHECK(cfg.prop.ple_near == 2.9);
  CHECK(cfg.prop.ple_far == 3.9);
  CHECK(cfg.prop.shadowing_sigma_db == 6.9);
  CHECK(cfg.ho.a2_ttt_ms == 64.0);
  CHECK(cfg.ho.a2_threshold_dbm == -90.0);
  CHECK(cfg.ho.a2_hyst_db == 1.0);
  CHECK(cfg.grid.size() == 35574);
  CHECK(cfg.schedule.budget == 2500);

  const auto sc = cfg.scenario();
  CHECK(sc.cells.size() == 24);  // 6 + 6 + 12
  CHECK(sc.band_cells[0].size() == 6);
  CHECK(sc.band_cells[1].size() == 6);
  CHECK(sc.band_cells[2].size() == 12);
}

TEST_CASE("ini parsing applies sections and values") {
  const std::string text = R"(
# reference setup, tweaked
[network]
sim_duration_ms = 5000
master_seed = 9
user_speeds_kmh = 3, 60

[propagation]
breakpoint_m = 200 ; inline comment

[sweep]
a5_th1_dbm = -100,-96,2
jobs = 2

[optimizer]
alpha = 0.5
beta = 0.25
)";
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.net.sim_duration_ms == 5000.0);
  CHECK(cfg.net.master_seed == 9);
  CHECK(cfg.net.user_speeds_kmh == std::vector<double>{3.0, 60.0});
  CHECK(cfg.prop.breakpoint_m == 200.0);
  CHECK(cfg.grid.a5_th1.lo == -100.0);
  CHECK(cfg.jobs == 2);
  CHECK(cfg.weights.alpha == 0.5);
  CHECK(cfg.weights.beta == 0.25);
}

TEST_CASE("unknown keys and sections are named in the error") {
  CHECK_THROWS_WITH_AS(parse_config("[network]\nbogus_key = 1\n"),
                       doctest::Contains("bogus_key"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[nonsense]\n"), doctest::Contains("nonsense"), ConfigError);
  CHECK_THROWS_AS(parse_config("key_without_section = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[network]\nsim_duration_ms ten\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[network]\nsim_duration_ms = ten\n"), ConfigError);
}

TEST_CASE("semantic validation failures") {
  CHECK_THROWS_AS(parse_config("[network]\nuser_density_per_km2 = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[network]\nmacro_cells_per_band = 7\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[sweep]\na5_th1_dbm = -116,-96,3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[model]\ntest_fraction = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[optimizer]\nalpha = 0.9\nbeta = 0.9\n"), ConfigError);
}

TEST_CASE("config hash tracks effective settings") {
  RunConfig a;
  RunConfig b;
  CHECK(config_hash(a) == config_hash(b));
  b.net.master_seed = 2;
  CHECK(config_hash(a) != config_hash(b));
  b = a;
  b.hp.gbt_rounds = 100;
  CHECK(config_hash(a) != config_hash(b));

  // parse(defaults-as-text) == defaults
  const RunConfig parsed = parse_config("");
  CHECK(config_hash(parsed) == config_hash(a));
}

TEST_CASE("missing config file raises a missing-input error") {
  CHECK_THROWS_AS(load_config("/nonexistent/path/config.ini"), MissingInputError);
}
