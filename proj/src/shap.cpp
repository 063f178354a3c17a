#include "hoopt/shap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hoopt/csv.hpp"
#include "hoopt/errors.hpp"
#include "hoopt/rng.hpp"

namespace hoopt {

namespace {

constexpr std::size_t kNumFeatures = 5;

// Evaluate a tree on the hybrid point that takes coalition features from
// the instance and the rest from a background row.
double descend_hybrid(const ml::RegressionTree& tree, const std::array<double, 5>& x,
                      std::span<const double> bg, std::uint32_t coalition) {
  int i = 0;
  while (!tree.nodes[i].is_leaf()) {
    const auto& n = tree.nodes[i];
    const double v = (coalition >> n.feature) & 1u ? x[n.feature] : bg[n.feature];
    i = v < n.threshold ? n.left : n.right;
  }
  return tree.nodes[i].value;
}

// Shapley coalition weights |S|! (m-1-|S|)! / m! for m players.
std::array<double, kNumFeatures + 1> coalition_weights(std::size_t m) {
  auto fact = [](std::size_t k) {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return f;
  };
  std::array<double, kNumFeatures + 1> w{};
  for (std::size_t s = 0; s < m; ++s) w[s] = fact(s) * fact(m - 1 - s) / fact(m);
  return w;
}

// Exact Shapley values of one tree. Features the tree never splits on are
// dummies and are skipped (their phi stays 0); reducing the game to the
// used features leaves the remaining Shapley values unchanged.
// Returns v(empty) = mean tree output over the background.
double shap_one_tree(const ml::RegressionTree& tree, const std::array<double, 5>& x,
                     const ml::FeatureMatrix& background, std::array<double, 5>& phi,
                     double weight) {
  const std::uint32_t used = tree.used_features();
  std::array<int, kNumFeatures> feat{};  // compact bit -> feature index
  std::size_t m = 0;
  for (std::size_t f = 0; f < kNumFeatures; ++f)
    if ((used >> f) & 1u) feat[m++] = static_cast<int>(f);

  const std::size_t n_subsets = std::size_t{1} << m;
  std::array<double, 32> v{};
  for (std::size_t r = 0; r < background.rows; ++r) {
    const auto bg = background.row(r);
    for (std::size_t s = 0; s < n_subsets; ++s) {
      std::uint32_t coalition = 0;
      for (std::size_t b = 0; b < m; ++b)
        if ((s >> b) & 1u) coalition |= 1u << feat[b];
      v[s] += descend_hybrid(tree, x, bg, coalition);
    }
  }
  const double inv_n = 1.0 / static_cast<double>(background.rows);
  for (std::size_t s = 0; s < n_subsets; ++s) v[s] *= inv_n;

  if (m > 0) {
    const auto w = coalition_weights(m);
    for (std::size_t b = 0; b < m; ++b) {
      double contrib = 0.0;
      for (std::size_t s = 0; s < n_subsets; ++s) {
        if ((s >> b) & 1u) continue;
        contrib += w[std::popcount(s)] * (v[s | (std::size_t{1} << b)] - v[s]);
      }
      phi[feat[b]] += weight * contrib;
    }
  }
  return v[0];
}

}  // namespace

ShapExplanation shap_values(const ml::TrainedModel& model, const std::array<double, 5>& instance,
                            const ml::FeatureMatrix& background) {
  if (background.rows == 0) throw InsufficientDataError("shap_values: empty background");
  if (background.cols != kNumFeatures)
    throw std::invalid_argument("shap_values: background must have 5 columns");

  ShapExplanation ex;
  ex.instance = instance;

  if (model.kind == ml::ModelKind::linear) {
    const auto& lm = std::get<ml::LinearModel>(model.reg);
    double base = lm.intercept;
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
      double mean = 0.0;
      for (std::size_t r = 0; r < background.rows; ++r) mean += background.at(r, f);
      mean /= static_cast<double>(background.rows);
      ex.phi[f] = lm.weights[f] * (instance[f] - mean);
      base += lm.weights[f] * mean;
    }
    ex.base_value = base;
    return ex;
  }

  if (!model.is_tree_ensemble())
    throw std::invalid_argument(std::string("shap_values: unsupported model kind '") +
                                ml::model_kind_name(model.kind) + "'");

  const auto view = model.ensemble_view();
  double base = view.base;
  for (const auto& [tree, weight] : view.trees)
    base += weight * shap_one_tree(*tree, instance, background, ex.phi, weight);
  ex.base_value = base;
  return ex;
}

std::array<double, 5> mean_abs_shap(const ml::TrainedModel& model, const ml::FeatureMatrix& rows,
                                    const ml::FeatureMatrix& background) {
  if (rows.rows == 0) throw InsufficientDataError("mean_abs_shap: empty dataset");
  std::array<double, 5> acc{};
  for (std::size_t r = 0; r < rows.rows; ++r) {
    std::array<double, 5> x;
    const auto row = rows.row(r);
    std::copy(row.begin(), row.end(), x.begin());
    const auto ex = shap_values(model, x, background);
    for (std::size_t f = 0; f < kNumFeatures; ++f) acc[f] += std::abs(ex.phi[f]);
  }
  for (auto& a : acc) a /= static_cast<double>(rows.rows);
  return acc;
}

std::vector<ImportanceEntry> importance_summary(const SurrogateBundle& bundle,
                                                const std::vector<DatasetRow>& rows,
                                                std::size_t background_size, std::uint64_t seed) {
  if (rows.empty()) throw InsufficientDataError("importance_summary: empty dataset");
  const ml::FeatureMatrix all = dataset_features(rows);

  ml::FeatureMatrix background;
  if (background_size == 0 || background_size >= rows.size()) {
    background = all;
  } else {
    background.rows = background_size;
    background.cols = all.cols;
    Rng rng(substream_seed(seed, "shap-background"));
    std::vector<std::size_t> idx(rows.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < background_size; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng.bounded(idx.size() - i));
      std::swap(idx[i], idx[j]);
    }
    for (std::size_t i = 0; i < background_size; ++i) {
      auto row = all.row(idx[i]);
      background.data.insert(background.data.end(), row.begin(), row.end());
    }
  }

  const std::array<std::pair<const char*, const ml::TrainedModel*>, 3> kpis = {
      std::make_pair("edge_rsrp_dbm", &bundle.edge_rsrp),
      std::make_pair("hosr_pct", &bundle.hosr),
      std::make_pair("load_factor_pct", &bundle.load_factor)};

  std::vector<ImportanceEntry> out;
  for (const auto& [name, model] : kpis) {
    const auto imp = mean_abs_shap(*model, all, background);
    std::vector<std::size_t> order(kNumFeatures);
    for (std::size_t i = 0; i < kNumFeatures; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return imp[a] > imp[b]; });
    for (std::size_t i : order) out.push_back({name, kCopFeatureNames[i], imp[i]});
  }
  return out;
}

std::string importance_csv(const std::vector<ImportanceEntry>& entries) {
  std::ostringstream out;
  out << "kpi,feature,mean_abs_shap\n";
  for (const auto& e : entries)
    out << e.kpi << ',' << e.feature << ',' << csv::fmt(e.mean_abs_shap) << '\n';
  return out.str();
}

}  // namespace hoopt
