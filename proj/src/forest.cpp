#include "hoopt/ml/forest.hpp"

#include <stdexcept>

namespace hoopt::ml {

ForestModel fit_forest(const FeatureMatrix& x, std::span<const double> y,
                       const ForestParams& params, std::uint64_t seed) {
  if (x.rows == 0 || y.size() != x.rows) throw std::invalid_argument("fit_forest: bad training set");
  if (params.n_trees <= 0) throw std::invalid_argument("fit_forest: n_trees must be positive");

  TreeGrowthParams tp = params.tree;
  tp.lambda = 0.0;
  tp.max_features = params.max_features;

  ForestModel model;
  model.trees.reserve(params.n_trees);
  for (int t = 0; t < params.n_trees; ++t) {
    Rng rng(substream_seed(seed, "forest-tree", static_cast<std::uint64_t>(t)));
    FeatureMatrix xt;
    std::vector<double> grad, hess;
    const FeatureMatrix* xp = &x;
    if (params.bootstrap) {
      xt.rows = x.rows;
      xt.cols = x.cols;
      xt.data.reserve(x.rows * x.cols);
      grad.reserve(x.rows);
      for (std::size_t i = 0; i < x.rows; ++i) {
        const std::size_t pick = rng.bounded(x.rows);
        auto row = x.row(pick);
        xt.data.insert(xt.data.end(), row.begin(), row.end());
        grad.push_back(-y[pick]);
      }
      xp = &xt;
    } else {
      grad.reserve(x.rows);
      for (double v : y) grad.push_back(-v);
    }
    hess.assign(x.rows, 1.0);
    model.trees.push_back(grow_tree(*xp, grad, hess, tp, &rng));
  }
  return model;
}

}  // namespace hoopt::ml
