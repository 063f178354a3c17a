#pragma once

#include <span>
#include <vector>

#include "hoopt/ml/tree.hpp"

namespace hoopt::ml {

/// Ordinary least squares, optionally on a degree-2 expansion
/// (5 linear + 10 pairwise + 5 squared terms + intercept for 5 inputs).
struct LinearModel {
  bool poly2 = false;
  std::vector<double> weights;  // over expanded features
  double intercept = 0.0;
  bool degenerate = false;  // design matrix was rank-deficient; pseudo-inverse used

  double predict(std::span<const double> x) const;

  /// Expansion order: x_i, then x_i*x_j for i<j, then x_i^2.
  static std::vector<double> expand_poly2(std::span<const double> x);
};

LinearModel fit_linear(const FeatureMatrix& x, std::span<const double> y, bool poly2);

}  // namespace hoopt::ml
