// Test-only exponential-time Shapley oracle. Deliberately independent of
// the production SHAP path: enumerates all 2^5 coalitions over the full
// feature set and walks trees with its own recursive evaluator.
#pragma once

#include <array>
#include <cstdint>

#include "hoopt/ml/tree.hpp"

namespace shap_oracle {

inline double eval_tree_rec(const hoopt::ml::RegressionTree& tree, int node,
                            const std::array<double, 5>& x, const std::array<double, 5>& bg,
                            std::uint32_t coalition) {
  const auto& n = tree.nodes[node];
  if (n.is_leaf()) return n.value;
  const double v = ((coalition >> n.feature) & 1u) ? x[n.feature] : bg[n.feature];
  return eval_tree_rec(tree, v < n.threshold ? n.left : n.right, x, bg, coalition);
}

inline double value_of_coalition(const hoopt::ml::RegressionTree& tree,
                                 const std::array<double, 5>& x,
                                 const hoopt::ml::FeatureMatrix& background,
                                 std::uint32_t coalition) {
  double sum = 0.0;
  for (std::size_t r = 0; r < background.rows; ++r) {
    std::array<double, 5> bg;
    for (std::size_t c = 0; c < 5; ++c) bg[c] = background.at(r, c);
    sum += eval_tree_rec(tree, 0, x, bg, coalition);
  }
  return sum / static_cast<double>(background.rows);
}

/// phi over all 5 features by the textbook sum over coalitions.
inline std::array<double, 5> shapley(const hoopt::ml::RegressionTree& tree,
                                     const std::array<double, 5>& x,
                                     const hoopt::ml::FeatureMatrix& background) {
  auto fact = [](int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  std::array<double, 5> phi{};
  for (int j = 0; j < 5; ++j) {
    for (std::uint32_t s = 0; s < 32; ++s) {
      if ((s >> j) & 1u) continue;
      int size = 0;
      for (int b = 0; b < 5; ++b) size += (s >> b) & 1u;
      const double w = fact(size) * fact(5 - size - 1) / fact(5);
      phi[j] += w * (value_of_coalition(tree, x, background, s | (1u << j)) -
                     value_of_coalition(tree, x, background, s));
    }
  }
  return phi;
}

}  // namespace shap_oracle
