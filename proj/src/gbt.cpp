#include "hoopt/ml/gbt.hpp"

#include <stdexcept>

namespace hoopt::ml {

namespace {

GbtModel fit_gbt_impl(const FeatureMatrix& x, std::span<const double> y, const GbtParams& params,
                      std::vector<double>* curve) {
  if (x.rows == 0 || y.size() != x.rows) throw std::invalid_argument("fit_gbt: bad training set");
  if (params.n_rounds < 0) throw std::invalid_argument("fit_gbt: negative round count");

  GbtModel model;
  model.learning_rate = params.learning_rate;
  double base = 0.0;
  for (double v : y) base += v;
  model.base_score = base / static_cast<double>(x.rows);

  std::vector<double> pred(x.rows, model.base_score);
  std::vector<double> grad(x.rows), hess(x.rows, 1.0);
  TreeGrowthParams tp{params.max_depth, 1, params.lambda, 0};

  auto mse = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) s += (pred[i] - y[i]) * (pred[i] - y[i]);
    return s / static_cast<double>(x.rows);
  };
  if (curve) curve->push_back(mse());

  for (int round = 0; round < params.n_rounds; ++round) {
    for (std::size_t i = 0; i < x.rows; ++i) grad[i] = pred[i] - y[i];
    RegressionTree tree = grow_tree(x, grad, hess, tp);
    for (std::size_t i = 0; i < x.rows; ++i)
      pred[i] += params.learning_rate * tree.predict(x.row(i));
    model.trees.push_back(std::move(tree));
    if (curve) curve->push_back(mse());
  }
  return model;
}

}  // namespace

GbtModel fit_gbt(const FeatureMatrix& x, std::span<const double> y, const GbtParams& params) {
  return fit_gbt_impl(x, y, params, nullptr);
}

std::vector<double> gbt_training_curve(const FeatureMatrix& x, std::span<const double> y,
                                       const GbtParams& params) {
  std::vector<double> curve;
  fit_gbt_impl(x, y, params, &curve);
  return curve;
}

}  // namespace hoopt::ml
