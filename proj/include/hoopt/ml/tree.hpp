#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hoopt/rng.hpp"

namespace hoopt::ml {

/// Row-major dense feature matrix.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

struct TreeNode {
  int feature = -1;  // -1 = leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf weight

  bool is_leaf() const { return feature < 0; }
};

/// Binary regression tree; x[feature] < threshold routes left.
struct RegressionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict(std::span<const double> x) const {
    int i = 0;
    while (!nodes[i].is_leaf()) i = x[nodes[i].feature] < nodes[i].threshold ? nodes[i].left : nodes[i].right;
    return nodes[i].value;
  }

  /// Features appearing on any split, as a bitmask.
  std::uint32_t used_features() const {
    std::uint32_t m = 0;
    for (const auto& n : nodes)
      if (!n.is_leaf()) m |= 1u << n.feature;
    return m;
  }
};

struct TreeGrowthParams {
  int max_depth = 8;
  std::size_t min_leaf = 5;
  double lambda = 0.0;  // L2 on leaf weights
  int max_features = 0;  // per-split subsampling; 0 = all
};

/// Greedy growth on gradient/hessian pairs with leaf weight -G/(H+lambda)
/// and gain GL^2/(HL+l) + GR^2/(HR+l) - G^2/(H+l). Plain CART falls out of
/// grad = -y, hess = 1, lambda = 0 (leaf = mean, variance-reduction
/// splits). Split ties resolve to the lowest feature index, then the
/// lowest threshold. `feature_rng` drives per-split feature subsampling
/// and may be null when max_features covers all columns.
RegressionTree grow_tree(const FeatureMatrix& x, std::span<const double> grad,
                         std::span<const double> hess, const TreeGrowthParams& params,
                         Rng* feature_rng = nullptr);

}  // namespace hoopt::ml
