#include "hoopt/opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hoopt/csv.hpp"
#include "hoopt/errors.hpp"
#include "hoopt/rng.hpp"

namespace hoopt {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

void ObjectiveWeights::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || alpha + beta > 1.0 + 1e-12)
    throw std::invalid_argument("objective weights need alpha, beta >= 0 and alpha + beta <= 1");
}

void OptConstraints::validate() const {
  for (double t : load_threshold_pct)
    if (!(t > 0.0 && t <= 100.0))
      throw std::invalid_argument("load thresholds must be in (0, 100]");
}

double objective(double m_tilde, double h_tilde, double l_tilde, const ObjectiveWeights& w) {
  w.validate();
  for (double v : {m_tilde, h_tilde, l_tilde})
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("objective inputs must be normalized to [0, 1]");
  return w.alpha * m_tilde + w.beta * h_tilde + (1.0 - w.alpha - w.beta) * l_tilde;
}

ScoreResult score_cop(const CopVector& cop, const SurrogateBundle& bundle,
                      const ObjectiveWeights& w, const OptConstraints& c) {
  validate_cop(cop);
  w.validate();
  c.validate();
  ScoreResult r;
  r.prediction = bundle.predict(cop);
  r.m_tilde = bundle.bounds.edge_rsrp.normalize(r.prediction.edge_rsrp_dbm);
  r.h_tilde = bundle.bounds.hosr.normalize(r.prediction.hosr_pct);
  r.l_tilde = bundle.bounds.load_factor.normalize(r.prediction.load_factor_pct);
  r.feasible = true;
  for (std::size_t b = 0; b < c.load_threshold_pct.size(); ++b)
    if (r.prediction.band_load_pct[b] > c.load_threshold_pct[b]) r.feasible = false;
  r.score = r.feasible ? objective(r.m_tilde, r.h_tilde, r.l_tilde, w) : kNegInf;
  return r;
}

OptimizationResult brute_force(const ScoreFn& score, const SweepGrid& grid) {
  const auto points = build_grid(grid);
  OptimizationResult best;
  best.score = kNegInf;
  best.feasible = false;
  best.evaluations = points.size();
  // Lexicographic iteration order; strict improvement keeps the smallest
  // COP among ties.
  for (const auto& cop : points) {
    const ScoreResult r = score(cop);
    if (!r.feasible) continue;
    if (!best.feasible || r.score > best.score) {
      best.best_cop = cop;
      best.score = r.score;
      best.feasible = true;
      best.m_tilde = r.m_tilde;
      best.h_tilde = r.h_tilde;
      best.l_tilde = r.l_tilde;
    }
  }
  if (!best.feasible) throw std::runtime_error("brute_force: no feasible grid point");
  return best;
}

OptimizationResult brute_force(const SurrogateBundle& bundle, const SweepGrid& grid,
                               const ObjectiveWeights& w, const OptConstraints& c) {
  return brute_force([&](const CopVector& cop) { return score_cop(cop, bundle, w, c); }, grid);
}

double AnnealingSchedule::ratio() const {
  if (cooling_ratio) return *cooling_ratio;
  return std::pow(final_temp / initial_temp, 1.0 / static_cast<double>(budget));
}

void AnnealingSchedule::validate() const {
  if (budget < 1) throw std::invalid_argument("annealing budget must be >= 1");
  if (!(initial_temp > 0.0) || !(final_temp > 0.0))
    throw std::invalid_argument("annealing temperatures must be positive");
  const double r = ratio();
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("cooling ratio must be in (0, 1)");
  if (neighbor_radius < 1) throw std::invalid_argument("neighbor radius must be >= 1");
}

OptimizationResult simulated_annealing(const ScoreFn& score, const SweepGrid& grid,
                                       const AnnealingSchedule& sched) {
  sched.validate();
  const auto axes = grid.axes();
  Rng rng(substream_seed(sched.seed, "sa-chain"));

  auto cop_at = [&](const std::array<std::size_t, 5>& idx) { return grid.at(idx); };
  auto random_point = [&] {
    std::array<std::size_t, 5> idx;
    for (std::size_t d = 0; d < 5; ++d) idx[d] = rng.bounded(axes[d].size());
    return idx;
  };

  // Seeded random feasible start.
  std::array<std::size_t, 5> cur{};
  ScoreResult cur_score;
  std::uint64_t evals = 0;
  bool found = false;
  for (int attempt = 0; attempt < 100 && evals < sched.budget; ++attempt) {
    cur = random_point();
    cur_score = score(cop_at(cur));
    ++evals;
    if (cur_score.feasible) {
      found = true;
      break;
    }
  }
  if (!found)
    throw std::runtime_error(
        "simulated_annealing: no feasible start point found (100-draw limit)");

  OptimizationResult best;
  best.best_cop = cop_at(cur);
  best.score = cur_score.score;
  best.feasible = true;
  best.m_tilde = cur_score.m_tilde;
  best.h_tilde = cur_score.h_tilde;
  best.l_tilde = cur_score.l_tilde;

  const double r = sched.ratio();
  double temp = sched.initial_temp;
  while (evals < sched.budget) {
    temp *= r;

    // Neighbor: one coordinate nudged by +-radius grid indices, clamped.
    std::array<std::size_t, 5> prop = cur;
    const std::size_t d = rng.bounded(5);
    const bool up = rng.bounded(2) == 1;
    const auto size = axes[d].size();
    auto i = static_cast<long long>(prop[d]);
    i += up ? sched.neighbor_radius : -sched.neighbor_radius;
    i = std::clamp<long long>(i, 0, static_cast<long long>(size) - 1);
    prop[d] = static_cast<std::size_t>(i);

    const ScoreResult prop_score = score(cop_at(prop));
    ++evals;

    const double delta = prop_score.score - cur_score.score;
    bool accept = prop_score.feasible && delta > 0.0;
    if (prop_score.feasible && delta <= 0.0)
      accept = rng.uniform01() < std::exp(delta / temp);
    if (accept) {
      cur = prop;
      cur_score = prop_score;
      if (cur_score.score > best.score) {
        best.best_cop = cop_at(cur);
        best.score = cur_score.score;
        best.m_tilde = cur_score.m_tilde;
        best.h_tilde = cur_score.h_tilde;
        best.l_tilde = cur_score.l_tilde;
      }
    }
  }
  best.evaluations = evals;
  return best;
}

OptimizationResult simulated_annealing(const SurrogateBundle& bundle, const SweepGrid& grid,
                                       const ObjectiveWeights& w, const OptConstraints& c,
                                       const AnnealingSchedule& sched) {
  return simulated_annealing([&](const CopVector& cop) { return score_cop(cop, bundle, w, c); },
                             grid, sched);
}

std::vector<CompareRow> compare(const SurrogateBundle& bundle, const SweepGrid& grid,
                                const std::vector<ObjectiveWeights>& w_list,
                                const OptConstraints& c, const AnnealingSchedule& sched,
                                int sa_runs, std::uint64_t base_seed) {
  if (sa_runs < 1) throw std::invalid_argument("compare: sa_runs must be >= 1");
  std::vector<CompareRow> rows;
  rows.reserve(w_list.size());
  for (const auto& w : w_list) {
    CompareRow row;
    row.alpha = w.alpha;
    row.beta = w.beta;

    const OptimizationResult bf = brute_force(bundle, grid, w, c);
    row.brute_force = bf.score;
    row.bf_evals = bf.evaluations;
    row.bf_cop = bf.best_cop;

    std::vector<double> scores;
    scores.reserve(sa_runs);
    std::uint64_t evals = 0;
    for (int k = 0; k < sa_runs; ++k) {
      AnnealingSchedule s = sched;
      s.seed = substream_seed(base_seed, "sa-run", static_cast<std::uint64_t>(k));
      const OptimizationResult res = simulated_annealing(bundle, grid, w, c, s);
      scores.push_back(res.score);
      evals = res.evaluations;
    }
    std::sort(scores.begin(), scores.end());
    const std::size_t n = scores.size();
    row.sa_median = n % 2 ? scores[n / 2] : 0.5 * (scores[n / 2 - 1] + scores[n / 2]);
    row.sa_min = scores.front();
    row.sa_max = scores.back();
    row.sa_evals = evals;
    row.speedup = static_cast<double>(row.bf_evals) / static_cast<double>(row.sa_evals);
    rows.push_back(row);
  }
  return rows;
}

std::string comparison_csv(const std::vector<CompareRow>& rows) {
  std::ostringstream out;
  out << "alpha,beta,sa_median,sa_min,sa_max,brute_force,sa_evals,bf_evals,speedup\n";
  for (const auto& r : rows)
    out << csv::fmt(r.alpha) << ',' << csv::fmt(r.beta) << ',' << csv::fmt(r.sa_median) << ','
        << csv::fmt(r.sa_min) << ',' << csv::fmt(r.sa_max) << ',' << csv::fmt(r.brute_force)
        << ',' << r.sa_evals << ',' << r.bf_evals << ',' << csv::fmt(r.speedup) << '\n';
  return out.str();
}

std::array<bool, 5> PartialCop::fixed_mask() const {
  return {a5_ttt_ms.has_value(), a5_th1_dbm.has_value(), a5_th2_dbm.has_value(),
          a3_ttt_ms.has_value(), a3_off_db.has_value()};
}

CopVector PartialCop::apply(const CopVector& base) const {
  CopVector cop = base;
  if (a5_ttt_ms) cop.a5_ttt_ms = *a5_ttt_ms;
  if (a5_th1_dbm) cop.a5_th1_dbm = *a5_th1_dbm;
  if (a5_th2_dbm) cop.a5_th2_dbm = *a5_th2_dbm;
  if (a3_ttt_ms) cop.a3_ttt_ms = *a3_ttt_ms;
  if (a3_off_db) cop.a3_off_db = *a3_off_db;
  return cop;
}

int count_local_maxima(const std::vector<double>& scores, std::size_t nx, std::size_t ny) {
  int count = 0;
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double v = scores[iy * nx + ix];
      bool strict_max = true;
      for (int dy = -1; dy <= 1 && strict_max; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const long long jx = static_cast<long long>(ix) + dx;
          const long long jy = static_cast<long long>(iy) + dy;
          if (jx < 0 || jy < 0 || jx >= static_cast<long long>(nx) ||
              jy >= static_cast<long long>(ny))
            continue;
          if (scores[static_cast<std::size_t>(jy) * nx + static_cast<std::size_t>(jx)] >= v) {
            strict_max = false;
            break;
          }
        }
      }
      if (strict_max) ++count;
    }
  }
  return count;
}

SliceResult surface_slice(const ScoreFn& score, const SweepGrid& grid, const PartialCop& fixed) {
  const auto mask = fixed.fixed_mask();
  std::vector<int> free_dims;
  for (int d = 0; d < 5; ++d)
    if (!mask[d]) free_dims.push_back(d);
  if (free_dims.size() != 2)
    throw std::invalid_argument("surface_slice: exactly two COP dimensions must be free, got " +
                                std::to_string(free_dims.size()));

  const auto axes = grid.axes();
  SliceResult slice;
  slice.dim_x = free_dims[0];
  slice.dim_y = free_dims[1];
  slice.x_values = axes[slice.dim_x];
  slice.y_values = axes[slice.dim_y];
  slice.scores.resize(slice.x_values.size() * slice.y_values.size());

  for (std::size_t iy = 0; iy < slice.y_values.size(); ++iy) {
    for (std::size_t ix = 0; ix < slice.x_values.size(); ++ix) {
      CopVector cop = fixed.apply(CopVector{});
      auto set_dim = [&](int dim, double v) {
        switch (dim) {
          case 0: cop.a5_ttt_ms = static_cast<int>(v); break;
          case 1: cop.a5_th1_dbm = v; break;
          case 2: cop.a5_th2_dbm = v; break;
          case 3: cop.a3_ttt_ms = static_cast<int>(v); break;
          case 4: cop.a3_off_db = v; break;
        }
      };
      set_dim(slice.dim_x, slice.x_values[ix]);
      set_dim(slice.dim_y, slice.y_values[iy]);
      slice.scores[iy * slice.x_values.size() + ix] = score(cop).score;
    }
  }
  slice.local_maxima =
      count_local_maxima(slice.scores, slice.x_values.size(), slice.y_values.size());
  return slice;
}

SliceResult surface_slice(const SurrogateBundle& bundle, const SweepGrid& grid,
                          const PartialCop& fixed, const ObjectiveWeights& w,
                          const OptConstraints& c) {
  return surface_slice([&](const CopVector& cop) { return score_cop(cop, bundle, w, c); }, grid,
                       fixed);
}

std::string slice_csv(const SliceResult& slice) {
  std::ostringstream out;
  out << kCopFeatureNames[slice.dim_x] << ',' << kCopFeatureNames[slice.dim_y] << ",score\n";
  for (std::size_t iy = 0; iy < slice.y_values.size(); ++iy)
    for (std::size_t ix = 0; ix < slice.x_values.size(); ++ix)
      out << csv::fmt(slice.x_values[ix]) << ',' << csv::fmt(slice.y_values[iy]) << ','
          << csv::fmt(slice.at(ix, iy)) << '\n';
  return out.str();
}

}  // namespace hoopt
