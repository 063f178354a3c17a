#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hoopt/ml/tree.hpp"

namespace hoopt::ml {

struct ForestParams {
  int n_trees = 100;
  int max_features = 3;
  bool bootstrap = true;
  TreeGrowthParams tree{8, 5, 0.0, 0};  // max_features is injected per tree
};

/// Bagged CART ensemble; prediction is the member mean.
struct ForestModel {
  std::vector<RegressionTree> trees;

  double predict(std::span<const double> x) const {
    double sum = 0.0;
    for (const auto& t : trees) sum += t.predict(x);
    return sum / static_cast<double>(trees.size());
  }
};

ForestModel fit_forest(const FeatureMatrix& x, std::span<const double> y,
                       const ForestParams& params, std::uint64_t seed);

}  // namespace hoopt::ml
