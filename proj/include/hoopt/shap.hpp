#pragma once

#include <array>
#include <string>
#include <vector>

#include "hoopt/ml/model.hpp"
#include "hoopt/surrogate.hpp"

namespace hoopt {

/// Additive decomposition of one prediction: base_value + sum(phi) equals
/// the model output on the instance.
struct ShapExplanation {
  double base_value = 0.0;
  std::array<double, 5> phi{};
  std::array<double, 5> instance{};

  double reconstructed() const {
    double v = base_value;
    for (double p : phi) v += p;
    return v;
  }
};

/// Exact interventional Shapley values against a background sample.
/// Tree ensembles get power-set tree SHAP (conditional expectations by
/// hybrid tree descent averaged over the background, enumerated over the
/// subsets of each tree's used features); plain linear models get the
/// analytic form w_j * (x_j - mean_j). Other kinds are unsupported.
ShapExplanation shap_values(const ml::TrainedModel& model, const std::array<double, 5>& instance,
                            const ml::FeatureMatrix& background);

/// Mean |phi| per feature over a set of rows.
std::array<double, 5> mean_abs_shap(const ml::TrainedModel& model, const ml::FeatureMatrix& rows,
                                    const ml::FeatureMatrix& background);

struct ImportanceEntry {
  std::string kpi;
  std::string feature;
  double mean_abs_shap = 0.0;
};

/// Per-KPI importance ranking over a dataset; background is a seeded
/// subsample of the same rows. Rows ordered by KPI, descending importance.
std::vector<ImportanceEntry> importance_summary(const SurrogateBundle& bundle,
                                                const std::vector<DatasetRow>& rows,
                                                std::size_t background_size, std::uint64_t seed);

/// CSV: kpi,feature,mean_abs_shap
std::string importance_csv(const std::vector<ImportanceEntry>& entries);

}  // namespace hoopt
