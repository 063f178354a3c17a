#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hoopt/kpi.hpp"
#include "hoopt/ml/model.hpp"
#include "hoopt/sweep.hpp"

namespace hoopt {

/// Fitted regressors for the three optimization KPIs plus the per-band
/// loads (for the load constraints), with the min-max normalization bounds
/// of the dataset they were trained on.
struct SurrogateBundle {
  std::uint64_t train_seed = 0;
  NormalizationBounds bounds;
  ml::TrainedModel edge_rsrp;
  ml::TrainedModel hosr;
  ml::TrainedModel load_factor;
  std::array<ml::TrainedModel, 3> band_loads;  // percent units

  struct Prediction {
    double edge_rsrp_dbm = 0.0;
    double hosr_pct = 0.0;
    double load_factor_pct = 0.0;
    std::array<double, 3> band_load_pct{0.0, 0.0, 0.0};
  };
  Prediction predict(const CopVector& cop) const;
};

struct EvalEntry {
  ml::ModelKind kind;
  std::string kpi;
  double rmse = 0.0;
};

struct TrainReport {
  std::vector<EvalEntry> entries;  // kinds x {edge_rsrp, hosr, load_factor}
  ml::ModelKind chosen_edge_rsrp = ml::ModelKind::gbt;
  ml::ModelKind chosen_hosr = ml::ModelKind::gbt;
  ml::ModelKind chosen_load_factor = ml::ModelKind::forest;
  std::size_t n_train = 0;
  std::size_t n_test = 0;

  std::optional<double> rmse_of(ml::ModelKind kind, const std::string& kpi) const;
};

struct TrainOptions {
  double test_fraction = 0.2;
  std::uint64_t seed = 7;
  ml::Hyperparams hp;
  /// When set, skip the model comparison and use this kind everywhere.
  std::optional<ml::ModelKind> force_kind;
};

/// Feature matrix (COP field order) and a named target column.
ml::FeatureMatrix dataset_features(const std::vector<DatasetRow>& rows);
std::vector<double> dataset_target(const std::vector<DatasetRow>& rows, const std::string& name);

/// Fits every model kind per KPI on a shared train/test split, reports the
/// test RMSE table, and assembles a bundle from the per-KPI best kinds
/// (band-load regressors reuse the load-factor winner).
std::pair<SurrogateBundle, TrainReport> train_surrogates(const Dataset& ds,
                                                         const TrainOptions& opt);

/// CSV: kind,kpi,rmse
std::string eval_report_csv(const TrainReport& report);

std::string bundle_to_json(const SurrogateBundle& bundle);
SurrogateBundle bundle_from_json(const std::string& text);
void save_bundle(const std::string& path, const SurrogateBundle& bundle);
SurrogateBundle load_bundle(const std::string& path);

}  // namespace hoopt
