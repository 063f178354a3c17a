#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hoopt/ml/tree.hpp"

namespace hoopt::ml {

struct GbtParams {
  int n_rounds = 200;
  int max_depth = 4;
  double learning_rate = 0.1;
  double lambda = 1.0;  // L2 in the leaf-weight formula -G/(H+lambda)
};

/// Stagewise squared-loss boosting: prediction = base + lr * sum of trees.
struct GbtModel {
  double base_score = 0.0;
  double learning_rate = 0.1;
  std::vector<RegressionTree> trees;

  double predict(std::span<const double> x) const {
    double v = base_score;
    for (const auto& t : trees) v += learning_rate * t.predict(x);
    return v;
  }
};

GbtModel fit_gbt(const FeatureMatrix& x, std::span<const double> y, const GbtParams& params);

/// Training MSE after each round (index 0 = base score only); the fit
/// keeps it non-increasing.
std::vector<double> gbt_training_curve(const FeatureMatrix& x, std::span<const double> y,
                                       const GbtParams& params);

}  // namespace hoopt::ml
