#include "hoopt/ml/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hoopt::ml {

namespace {

struct Builder {
  const FeatureMatrix& x;
  std::span<const double> grad;
  std::span<const double> hess;
  const TreeGrowthParams& p;
  Rng* rng;
  std::vector<TreeNode> nodes;
  std::vector<std::size_t> order;  // scratch: node sample indices, re-sorted per feature

  int grow(std::vector<std::size_t>& idx, int depth) {
    double g_sum = 0.0, h_sum = 0.0, g2_sum = 0.0;
    for (std::size_t i : idx) {
      g_sum += grad[i];
      h_sum += hess[i];
      g2_sum += grad[i] * grad[i];
    }
    const double leaf_value = -g_sum / (h_sum + p.lambda);

    if (depth >= p.max_depth || idx.size() < 2 * p.min_leaf) return make_leaf(leaf_value);

    const double parent_score = g_sum * g_sum / (h_sum + p.lambda);
    // Floor for rounding noise, scaled by the gradient spread (not the
    // mean) so constant targets never split and translated targets pick
    // the same structure.
    const double spread = std::max(0.0, g2_sum - g_sum * g_sum / std::max(h_sum, 1e-12));
    const double gain_floor = 1e-11 * (1.0 + spread);
    double best_gain = gain_floor;
    int best_feature = -1;
    double best_threshold = 0.0;

    for (std::size_t f : candidate_features()) {
      order = idx;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = x.at(a, f), vb = x.at(b, f);
        return va < vb || (va == vb && a < b);
      });
      double gl = 0.0, hl = 0.0;
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        gl += grad[order[i]];
        hl += hess[order[i]];
        const double lo = x.at(order[i], f);
        const double hi = x.at(order[i + 1], f);
        if (lo == hi) continue;
        const std::size_t n_left = i + 1;
        if (n_left < p.min_leaf || order.size() - n_left < p.min_leaf) continue;
        const double gr = g_sum - gl, hr = h_sum - hl;
        const double gain =
            gl * gl / (hl + p.lambda) + gr * gr / (hr + p.lambda) - parent_score;
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = static_cast<int>(f);
          best_threshold = lo + (hi - lo) / 2.0;
        }
      }
    }

    if (best_feature < 0) return make_leaf(leaf_value);

    std::vector<std::size_t> left, right;
    left.reserve(idx.size());
    right.reserve(idx.size());
    for (std::size_t i : idx)
      (x.at(i, best_feature) < best_threshold ? left : right).push_back(i);
    idx.clear();
    idx.shrink_to_fit();

    const int me = static_cast<int>(nodes.size());
    nodes.push_back({best_feature, best_threshold, -1, -1, 0.0});
    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    nodes[me].left = l;
    nodes[me].right = r;
    return me;
  }

  int make_leaf(double value) {
    nodes.push_back({-1, 0.0, -1, -1, value});
    return static_cast<int>(nodes.size()) - 1;
  }

  std::vector<std::size_t> candidate_features() {
    std::vector<std::size_t> feats(x.cols);
    std::iota(feats.begin(), feats.end(), 0);
    if (p.max_features <= 0 || static_cast<std::size_t>(p.max_features) >= x.cols || !rng)
      return feats;
    for (int i = 0; i < p.max_features; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng->bounded(feats.size() - i));
      std::swap(feats[i], feats[j]);
    }
    feats.resize(p.max_features);
    std::sort(feats.begin(), feats.end());  // ascending keeps the tie rule
    return feats;
  }
};

}  // namespace

RegressionTree grow_tree(const FeatureMatrix& x, std::span<const double> grad,
                         std::span<const double> hess, const TreeGrowthParams& params,
                         Rng* feature_rng) {
  if (x.rows == 0) throw std::invalid_argument("grow_tree: empty training set");
  if (grad.size() != x.rows || hess.size() != x.rows)
    throw std::invalid_argument("grow_tree: grad/hess size mismatch");
  Builder b{x, grad, hess, params, feature_rng, {}, {}};
  std::vector<std::size_t> idx(x.rows);
  std::iota(idx.begin(), idx.end(), 0);
  // Root is grown first, so nodes[0] is the root for non-trivial trees;
  // a pure leaf tree also lands at index 0.
  b.grow(idx, 0);
  RegressionTree t;
  t.nodes = std::move(b.nodes);
  return t;
}

}  // namespace hoopt::ml
