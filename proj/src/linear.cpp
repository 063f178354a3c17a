#include "hoopt/ml/linear.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace hoopt::ml {

std::vector<double> LinearModel::expand_poly2(std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) out.push_back(x[i] * x[j]);
  for (double v : x) out.push_back(v * v);
  return out;
}

double LinearModel::predict(std::span<const double> x) const {
  std::vector<double> expanded;
  if (poly2) expanded = expand_poly2(x);
  std::span<const double> feats = poly2 ? std::span<const double>(expanded) : x;
  if (feats.size() != weights.size())
    throw std::invalid_argument("LinearModel::predict: feature count mismatch");
  double v = intercept;
  for (std::size_t i = 0; i < feats.size(); ++i) v += weights[i] * feats[i];
  return v;
}

LinearModel fit_linear(const FeatureMatrix& x, std::span<const double> y, bool poly2) {
  if (x.rows == 0 || y.size() != x.rows)
    throw std::invalid_argument("fit_linear: bad training set");

  std::size_t m = x.cols;
  std::vector<std::vector<double>> expanded;
  if (poly2) {
    expanded.reserve(x.rows);
    for (std::size_t r = 0; r < x.rows; ++r) expanded.push_back(LinearModel::expand_poly2(x.row(r)));
    m = expanded.front().size();
  }

  Eigen::MatrixXd a(x.rows, m + 1);
  Eigen::VectorXd b(x.rows);
  for (std::size_t r = 0; r < x.rows; ++r) {
    for (std::size_t c = 0; c < m; ++c) a(r, c) = poly2 ? expanded[r][c] : x.at(r, c);
    a(r, m) = 1.0;
    b(r) = y[r];
  }

  // Rank-revealing solve; rank deficiency falls back to the minimum-norm
  // (pseudo-inverse) solution and is flagged.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  Eigen::VectorXd w = cod.solve(b);

  LinearModel model;
  model.poly2 = poly2;
  model.degenerate = cod.rank() < static_cast<Eigen::Index>(m + 1);
  model.weights.assign(w.data(), w.data() + m);
  model.intercept = w(m);
  return model;
}

}  // namespace hoopt::ml
