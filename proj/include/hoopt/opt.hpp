#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hoopt/surrogate.hpp"
#include "hoopt/sweep.hpp"

namespace hoopt {

/// Weights of the scalarized objective: alpha on edge RSRP, beta on HOSR,
/// the remainder (1 - alpha - beta) on the load factor.
struct ObjectiveWeights {
  double alpha = 0.33;
  double beta = 0.33;

  void validate() const;
};

struct OptConstraints {
  /// Per-band load ceilings in percent; 100 disables the constraint.
  std::array<double, 3> load_threshold_pct{100.0, 100.0, 100.0};

  void validate() const;
};

/// alpha*m + beta*h + (1-alpha-beta)*l on normalized KPI values.
double objective(double m_tilde, double h_tilde, double l_tilde, const ObjectiveWeights& w);

struct ScoreResult {
  double score = 0.0;  // -inf when infeasible
  bool feasible = true;
  double m_tilde = 0.0;
  double h_tilde = 0.0;
  double l_tilde = 0.0;
  SurrogateBundle::Prediction prediction;
};

/// Scores one COP on surrogate predictions: normalize with the bundle's
/// stored bounds (clamped to [0,1]), check the band-load constraints,
/// combine with the weights. COPs outside the standardized ranges are
/// rejected.
ScoreResult score_cop(const CopVector& cop, const SurrogateBundle& bundle,
                      const ObjectiveWeights& w, const OptConstraints& c);

using ScoreFn = std::function<ScoreResult(const CopVector&)>;

struct OptimizationResult {
  CopVector best_cop;
  double score = 0.0;
  std::uint64_t evaluations = 0;
  bool feasible = false;
  double m_tilde = 0.0;
  double h_tilde = 0.0;
  double l_tilde = 0.0;
};

/// Exhaustive scoring of the grid; feasible argmax with ties resolved to
/// the lexicographically smallest COP. Throws when no point is feasible.
OptimizationResult brute_force(const ScoreFn& score, const SweepGrid& grid);
OptimizationResult brute_force(const SurrogateBundle& bundle, const SweepGrid& grid,
                               const ObjectiveWeights& w, const OptConstraints& c);

struct AnnealingSchedule {
  double initial_temp = 1.0;
  /// Geometric cooling ratio; unset derives the ratio that reaches
  /// final_temp exactly at the evaluation budget.
  std::optional<double> cooling_ratio;
  double final_temp = 1e-3;
  std::uint64_t budget = 2500;
  int neighbor_radius = 1;  // grid steps per move
  std::uint64_t seed = 0;

  double ratio() const;
  void validate() const;
};

/// Stochastic local search on the quantized grid: start at a seeded random
/// feasible point, move one coordinate by +-1 grid index per step, accept
/// improvements always and deteriorations with probability exp(delta/T_k),
/// T_k = T0 * r^k. Returns the best point ever visited and the exact
/// number of score evaluations (= budget).
OptimizationResult simulated_annealing(const ScoreFn& score, const SweepGrid& grid,
                                       const AnnealingSchedule& sched);
OptimizationResult simulated_annealing(const SurrogateBundle& bundle, const SweepGrid& grid,
                                       const ObjectiveWeights& w, const OptConstraints& c,
                                       const AnnealingSchedule& sched);

struct CompareRow {
  double alpha = 0.0;
  double beta = 0.0;
  double sa_median = 0.0;
  double sa_min = 0.0;
  double sa_max = 0.0;
  double brute_force = 0.0;
  std::uint64_t sa_evals = 0;
  std::uint64_t bf_evals = 0;
  double speedup = 0.0;
  CopVector bf_cop;
};

inline const std::vector<ObjectiveWeights> kTable3Weights = {
    {0.33, 0.33}, {0.8, 0.1}, {0.1, 0.8}, {0.1, 0.1}};

/// Brute force once and `sa_runs` annealing repetitions per weight pair;
/// SA run k uses seed substream(base_seed, "sa-run", k).
std::vector<CompareRow> compare(const SurrogateBundle& bundle, const SweepGrid& grid,
                                const std::vector<ObjectiveWeights>& w_list,
                                const OptConstraints& c, const AnnealingSchedule& sched,
                                int sa_runs, std::uint64_t base_seed);

/// CSV: alpha,beta,sa_median,sa_min,sa_max,brute_force,sa_evals,bf_evals,speedup
std::string comparison_csv(const std::vector<CompareRow>& rows);

/// A COP with some fields pinned; unset fields are free.
struct PartialCop {
  std::optional<int> a5_ttt_ms;
  std::optional<double> a5_th1_dbm;
  std::optional<double> a5_th2_dbm;
  std::optional<int> a3_ttt_ms;
  std::optional<double> a3_off_db;

  std::array<bool, 5> fixed_mask() const;
  CopVector apply(const CopVector& base) const;
};

struct SliceResult {
  int dim_x = 0;  // COP field index of the first free dimension
  int dim_y = 0;
  std::vector<double> x_values;
  std::vector<double> y_values;
  std::vector<double> scores;  // row-major: scores[iy * nx + ix]
  int local_maxima = 0;        // strict 8-neighborhood maxima

  double at(std::size_t ix, std::size_t iy) const { return scores[iy * x_values.size() + ix]; }
};

/// Scores the grid restricted to exactly two free COP dimensions and
/// counts strict local maxima as non-convexity evidence.
SliceResult surface_slice(const ScoreFn& score, const SweepGrid& grid, const PartialCop& fixed);
SliceResult surface_slice(const SurrogateBundle& bundle, const SweepGrid& grid,
                          const PartialCop& fixed, const ObjectiveWeights& w,
                          const OptConstraints& c);

/// CSV with one row per grid point: <x_name>,<y_name>,score
std::string slice_csv(const SliceResult& slice);

/// Strict 8-neighborhood local-maxima count of a row-major surface.
int count_local_maxima(const std::vector<double>& scores, std::size_t nx, std::size_t ny);

}  // namespace hoopt
