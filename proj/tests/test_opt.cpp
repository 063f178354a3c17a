#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "hoopt/opt.hpp"
#include "hoopt/rng.hpp"

using namespace hoopt;

namespace {

// Synthetic grids keep tests off the full 35k-point lattice.
SweepGrid tiny_grid() {
  SweepGrid g;
  g.a5_ttt_ms = {64};
  g.a5_th1 = {-104.0, -96.0, 2.0};  // 5 values
  g.a5_th2 = {-104.0, -96.0, 2.0};  // 5 values
  g.a3_ttt_ms = {64};
  g.a3_off = {0.0, 0.0, 2.0};
  return g;
}

ScoreFn scorer(std::function<double(const CopVector&)> f) {
  return [f = std::move(f)](const CopVector& cop) {
    ScoreResult r;
    r.score = f(cop);
    r.feasible = true;
    return r;
  };
}

// Hand-built linear surrogate bundle with known bounds, for score_cop.
SurrogateBundle linear_bundle() {
  auto linear = [](std::vector<double> w, double b) {
    ml::LinearModel lm;
    lm.weights = std::move(w);
    lm.intercept = b;
    ml::TrainedModel m;
    m.kind = ml::ModelKind::linear;
    m.reg = std::move(lm);
    return m;
  };
  SurrogateBundle bundle;
  // edge rsrp rises with th1, hosr falls with th2, load factor constant.
  bundle.edge_rsrp = linear({0.0, 0.5, 0.0, 0.0, 0.0}, -50.0);
  bundle.hosr = linear({0.0, 0.0, -0.5, 0.0, 0.0}, 20.0);
  bundle.load_factor = linear({0.0, 0.0, 0.0, 0.0, 0.0}, 80.0);
  bundle.band_loads[0] = linear({0.0, 0.0, 0.0, 0.0, 0.0}, 30.0);
  bundle.band_loads[1] = linear({0.0, 0.0, 0.0, 0.0, 0.0}, 20.0);
  bundle.band_loads[2] = linear({0.0, 0.0, 0.0, 0.0, 0.0}, 10.0);
  bundle.bounds.edge_rsrp = {-110.0, -95.0};
  bundle.bounds.hosr = {60.0, 80.0};
  bundle.bounds.load_factor = {70.0, 90.0};
  return bundle;
}

}  // namespace

TEST_CASE("objective arithmetic and weight collapse") {
  CHECK(objective(0.7, 0.1, 0.2, {1.0, 0.0}) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(objective(0.5, 0.5, 0.5, {0.2, 0.3}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(objective(0.9, 0.8, 0.7, {0.33, 0.33}) == doctest::Approx(0.799).epsilon(1e-9));
}

TEST_CASE("objective validates weights and inputs") {
  CHECK_THROWS_AS(objective(0.5, 0.5, 0.5, {0.7, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(objective(0.5, 0.5, 0.5, {-0.1, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(objective(1.5, 0.5, 0.5, {0.3, 0.3}), std::invalid_argument);
  CHECK_THROWS_AS(objective(0.5, -0.1, 0.5, {0.3, 0.3}), std::invalid_argument);
}

TEST_CASE("objective is monotone in every normalized kpi") {
  Rng rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    ObjectiveWeights w{rng.uniform01() * 0.5, rng.uniform01() * 0.5};
    const double m = rng.uniform01(), h = rng.uniform01(), l = rng.uniform01();
    const double base = objective(m, h, l, w);
    const double dm = (1.0 - m) * rng.uniform01();
    const double dh = (1.0 - h) * rng.uniform01();
    const double dl = (1.0 - l) * rng.uniform01();
    CHECK(objective(m + dm, h, l, w) >= base - 1e-12);
    CHECK(objective(m, h + dh, l, w) >= base - 1e-12);
    CHECK(objective(m, h, l + dl, w) >= base - 1e-12);
  }
}

TEST_CASE("score_cop composes prediction, normalization and objective") {
  const auto bundle = linear_bundle();
  const ObjectiveWeights w{0.4, 0.4};
  const OptConstraints c;
  CopVector cop{64, -100.0, -100.0, 64, 0.0};

  const auto r = score_cop(cop, bundle, w, c);
  // edge = -50 + 0.5*(-100) = -100 -> (-100+110)/15 = 2/3
  CHECK(r.m_tilde == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // hosr = 20 - 0.5*(-100) = 70 -> 0.5
  CHECK(r.h_tilde == doctest::Approx(0.5).epsilon(1e-12));
  // load factor constant 80 -> 0.5
  CHECK(r.l_tilde == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.feasible);
  CHECK(r.score == doctest::Approx(objective(r.m_tilde, r.h_tilde, r.l_tilde, w)).epsilon(1e-12));

  // Out-of-range predictions clamp into [0, 1].
  CopVector hot{64, -96.0, -116.0, 64, 0.0};  // edge pred -98 -> 0.8; hosr pred 78 -> 0.9
  const auto r2 = score_cop(hot, bundle, w, c);
  CHECK(r2.m_tilde <= 1.0);
  CHECK(r2.h_tilde <= 1.0);

  CopVector bad = cop;
  bad.a5_th1_dbm = -120.0;
  CHECK_THROWS_AS(score_cop(bad, bundle, w, c), std::invalid_argument);
}

TEST_CASE("load thresholds gate feasibility") {
  const auto bundle = linear_bundle();  // band loads 30/20/10
  const ObjectiveWeights w{0.33, 0.33};
  OptConstraints c;
  CHECK(score_cop({64, -100, -100, 64, 0}, bundle, w, c).feasible);  // 100% thresholds
  c.load_threshold_pct = {25.0, 100.0, 100.0};
  const auto r = score_cop({64, -100, -100, 64, 0}, bundle, w, c);
  CHECK_FALSE(r.feasible);
  CHECK(std::isinf(r.score));
  CHECK_THROWS_AS(brute_force(bundle, tiny_grid(), w, c), std::runtime_error);
}

TEST_CASE("brute force finds the argmax and breaks ties lexicographically") {
  const auto grid = tiny_grid();
  const auto res = brute_force(scorer([](const CopVector& cop) {
                                 return cop.a5_th1_dbm == -100.0 && cop.a5_th2_dbm == -98.0 ? 0.9
                                                                                            : 0.1;
                               }),
                               grid);
  CHECK(res.score == 0.9);
  CHECK(res.best_cop.a5_th1_dbm == -100.0);
  CHECK(res.best_cop.a5_th2_dbm == -98.0);
  CHECK(res.evaluations == 25);

  // All-equal surface: the lexicographically smallest point wins.
  const auto flat = brute_force(scorer([](const CopVector&) { return 0.5; }), grid);
  CHECK(flat.best_cop == CopVector{64, -104.0, -104.0, 64, 0.0});
}

TEST_CASE("annealing respects the budget and the start point") {
  AnnealingSchedule sched;
  sched.budget = 1;
  sched.seed = 9;
  const auto res = simulated_annealing(scorer([](const CopVector& cop) {
                                         return -std::abs(cop.a5_th1_dbm + 100.0);
                                       }),
                                       tiny_grid(), sched);
  CHECK(res.evaluations == 1);

  AnnealingSchedule flat_sched;
  flat_sched.budget = 50;
  const auto flat = simulated_annealing(scorer([](const CopVector&) { return 0.25; }),
                                        tiny_grid(), flat_sched);
  CHECK(flat.score == 0.25);
  CHECK(flat.evaluations == 50);
}

TEST_CASE("annealing returns the best point it ever evaluated") {
  // Wrapping the scorer records every evaluation; because improving moves
  // are always accepted, the returned best must equal the max over the
  // whole evaluated sequence.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::vector<double> seen;
    AnnealingSchedule sched;
    sched.budget = 300;
    sched.seed = seed;
    const auto res = simulated_annealing(scorer([&seen](const CopVector& cop) {
                                           const double v =
                                               std::sin(cop.a5_th1_dbm) * std::cos(cop.a5_th2_dbm);
                                           seen.push_back(v);
                                           return v;
                                         }),
                                         tiny_grid(), sched);
    double best = seen[0];
    for (double v : seen) best = std::max(best, v);
    CHECK(res.score == best);
    CHECK(res.evaluations == 300);
  }
}

TEST_CASE("annealing finds a planted unique maximum on nearly every seed") {
  const auto grid = tiny_grid();  // 5x5 over (th1, th2)
  auto planted = scorer([](const CopVector& cop) {
    // Unique peak at (-98, -102), gentle slope elsewhere.
    const double d1 = cop.a5_th1_dbm + 98.0;
    const double d2 = cop.a5_th2_dbm + 102.0;
    return 1.0 - 0.01 * (d1 * d1 + d2 * d2);
  });
  const auto truth = brute_force(planted, grid);
  CHECK(truth.best_cop.a5_th1_dbm == -98.0);
  CHECK(truth.best_cop.a5_th2_dbm == -102.0);

  int hits = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    AnnealingSchedule sched;
    sched.budget = 200;
    sched.seed = seed;
    const auto res = simulated_annealing(planted, grid, sched);
    CHECK(res.score <= truth.score);  // never beats exhaustive search
    if (res.best_cop == truth.best_cop) ++hits;
  }
  CHECK(hits >= 190);  // >= 95% of seeds
}

TEST_CASE("common affine rescaling of the objective keeps the argmax") {
  const auto grid = tiny_grid();
  auto base = [](const CopVector& cop) {
    return std::sin(cop.a5_th1_dbm * 0.3) + std::cos(cop.a5_th2_dbm * 0.7);
  };
  const auto a = brute_force(scorer(base), grid);
  const auto b = brute_force(scorer([&](const CopVector& cop) { return 4.0 + 2.5 * base(cop); }),
                             grid);
  CHECK(a.best_cop == b.best_cop);
}

TEST_CASE("schedule validation and cooling ratio derivation") {
  AnnealingSchedule sched;
  CHECK(sched.ratio() == doctest::Approx(std::pow(1e-3, 1.0 / 2500.0)).epsilon(1e-12));
  sched.budget = 0;
  CHECK_THROWS_AS(sched.validate(), std::invalid_argument);
  sched = {};
  sched.cooling_ratio = 1.5;
  CHECK_THROWS_AS(sched.validate(), std::invalid_argument);
  sched = {};
  sched.final_temp = 2.0;  // above initial -> ratio >= 1
  CHECK_THROWS_AS(sched.validate(), std::invalid_argument);
}

TEST_CASE("compare reports medians, bounds and the exact speedup") {
  const auto bundle = linear_bundle();
  const auto grid = tiny_grid();
  AnnealingSchedule sched;
  sched.budget = 10;
  const auto rows = compare(bundle, grid, {{0.33, 0.33}, {0.8, 0.1}}, {}, sched, 5, 123);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.sa_min <= r.sa_median);
    CHECK(r.sa_median <= r.sa_max);
    CHECK(r.sa_median <= r.brute_force + 1e-12);
    CHECK(r.bf_evals == 25);
    CHECK(r.sa_evals == 10);
    CHECK(r.speedup == doctest::Approx(2.5).epsilon(1e-12));
  }
  const std::string csv = comparison_csv(rows);
  CHECK(csv.find("alpha,beta,sa_median,sa_min,sa_max,brute_force,sa_evals,bf_evals,speedup") == 0);
}

TEST_CASE("surface slice over two free dimensions") {
  PartialCop fixed;
  fixed.a5_ttt_ms = 64;
  fixed.a3_ttt_ms = 64;
  fixed.a3_off_db = 0.0;

  // Constant surface: a plateau has no strict maxima.
  const auto flat = surface_slice(scorer([](const CopVector&) { return 0.7; }), tiny_grid(), fixed);
  CHECK(flat.x_values.size() == 5);
  CHECK(flat.y_values.size() == 5);
  CHECK(flat.scores.size() == 25);
  CHECK(flat.local_maxima == 0);

  // Two planted bumps.
  const auto bumps = surface_slice(scorer([](const CopVector& cop) {
                                     const bool a =
                                         cop.a5_th1_dbm == -104.0 && cop.a5_th2_dbm == -104.0;
                                     const bool b =
                                         cop.a5_th1_dbm == -96.0 && cop.a5_th2_dbm == -96.0;
                                     return a || b ? 1.0 : 0.0;
                                   }),
                                   tiny_grid(), fixed);
  CHECK(bumps.local_maxima == 2);

  // Default grid at the reference slice settings: 11 x 11 = 121 points.
  const auto full = surface_slice(scorer([](const CopVector& cop) {
                                    return 0.01 * cop.a5_th1_dbm * cop.a5_th2_dbm;
                                  }),
                                  SweepGrid{}, fixed);
  CHECK(full.scores.size() == 121);
  const std::string csv = slice_csv(full);
  CHECK(csv.find("a5_th1_dbm,a5_th2_dbm,score") == 0);

  PartialCop under;
  under.a5_ttt_ms = 64;
  CHECK_THROWS_AS(surface_slice(scorer([](const CopVector&) { return 0.0; }), tiny_grid(), under),
                  std::invalid_argument);
}

TEST_CASE("local maxima counting on hand grids") {
  // 3x3 with a single strict peak in the centre.
  CHECK(count_local_maxima({0, 0, 0, 0, 5, 0, 0, 0, 0}, 3, 3) == 1);
  // Monotone ramp: only the far corner is a strict max.
  CHECK(count_local_maxima({1, 2, 3, 4, 5, 6, 7, 8, 9}, 3, 3) == 1);
  // Plateau everywhere: none.
  CHECK(count_local_maxima({2, 2, 2, 2}, 2, 2) == 0);
  // Two opposite corners.
  CHECK(count_local_maxima({9, 0, 0, 0, 0, 0, 0, 0, 9}, 3, 3) == 2);
}
