#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hoopt/ml/forest.hpp"
#include "hoopt/ml/gbt.hpp"
#include "hoopt/ml/linear.hpp"
#include "hoopt/ml/tree.hpp"

namespace hoopt::ml {

enum class ModelKind { linear, poly2, tree, forest, gbt };

inline const ModelKind kAllModelKinds[] = {ModelKind::linear, ModelKind::poly2, ModelKind::tree,
                                           ModelKind::forest, ModelKind::gbt};

const char* model_kind_name(ModelKind kind);
ModelKind model_kind_from(const std::string& name);

struct Hyperparams {
  int tree_max_depth = 8;
  int tree_min_leaf = 5;
  int forest_trees = 100;
  int forest_max_features = 3;
  bool forest_bootstrap = true;
  int gbt_rounds = 200;
  int gbt_depth = 4;
  double gbt_learning_rate = 0.1;
  double gbt_lambda = 1.0;

  void validate() const;
};

/// A fitted regressor of one kind for one target. Prediction is pure and
/// thread-safe after fit.
struct TrainedModel {
  ModelKind kind = ModelKind::linear;
  Hyperparams hp;
  std::uint64_t seed = 0;
  std::variant<LinearModel, RegressionTree, ForestModel, GbtModel> reg;

  double predict(std::span<const double> x) const;

  bool is_tree_ensemble() const {
    return kind == ModelKind::tree || kind == ModelKind::forest || kind == ModelKind::gbt;
  }

  /// Uniform ensemble view: prediction = base + sum(weight_i * tree_i(x)).
  struct EnsembleView {
    double base = 0.0;
    std::vector<std::pair<const RegressionTree*, double>> trees;
  };
  EnsembleView ensemble_view() const;  // tree ensembles only
};

TrainedModel fit_model(ModelKind kind, const FeatureMatrix& x, std::span<const double> y,
                       const Hyperparams& hp, std::uint64_t seed);

double rmse(const TrainedModel& model, const FeatureMatrix& x, std::span<const double> y);

/// Seeded uniform shuffle, then split: (train, test) index lists, disjoint
/// and exhaustive. Requires at least 10 rows and 0 < test_fraction < 1.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_dataset(
    std::size_t n, double test_fraction, std::uint64_t seed);

/// Self-describing JSON payload; load reproduces predictions exactly.
std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);

}  // namespace hoopt::ml
