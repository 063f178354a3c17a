#include "hoopt/surrogate.hpp"

#include <nlohmann/json.hpp>
#include <algorithm>
#include <limits>
#include <sstream>

#include "hoopt/csv.hpp"
#include "hoopt/errors.hpp"
#include "hoopt/rng.hpp"

namespace hoopt {

using ordered_json = nlohmann::ordered_json;

namespace ml {
// Defined in model.cpp; shared here for the bundle container format.
ordered_json model_to_json_obj(const TrainedModel& m);
TrainedModel model_from_json_obj(const ordered_json& j);
}  // namespace ml

SurrogateBundle::Prediction SurrogateBundle::predict(const CopVector& cop) const {
  const auto x = cop.features();
  Prediction p;
  p.edge_rsrp_dbm = edge_rsrp.predict(x);
  p.hosr_pct = hosr.predict(x);
  p.load_factor_pct = load_factor.predict(x);
  for (std::size_t b = 0; b < band_loads.size(); ++b) p.band_load_pct[b] = band_loads[b].predict(x);
  return p;
}

std::optional<double> TrainReport::rmse_of(ml::ModelKind kind, const std::string& kpi) const {
  for (const auto& e : entries)
    if (e.kind == kind && e.kpi == kpi) return e.rmse;
  return std::nullopt;
}

ml::FeatureMatrix dataset_features(const std::vector<DatasetRow>& rows) {
  ml::FeatureMatrix x;
  x.rows = rows.size();
  x.cols = 5;
  x.data.reserve(x.rows * x.cols);
  for (const auto& r : rows) {
    const auto f = r.cop.features();
    x.data.insert(x.data.end(), f.begin(), f.end());
  }
  return x;
}

std::vector<double> dataset_target(const std::vector<DatasetRow>& rows, const std::string& name) {
  std::vector<double> y;
  y.reserve(rows.size());
  for (const auto& r : rows) {
    if (name == "edge_rsrp_dbm") y.push_back(r.kpis.edge_rsrp_dbm);
    else if (name == "hosr_pct") y.push_back(r.kpis.hosr_pct);
    else if (name == "load_factor_pct") y.push_back(r.kpis.load_factor_pct);
    else if (name == "load_1700_pct") y.push_back(r.band_load_pct[0]);
    else if (name == "load_2100_pct") y.push_back(r.band_load_pct[1]);
    else if (name == "load_3500_pct") y.push_back(r.band_load_pct[2]);
    else throw SchemaError("unknown target column '" + name + "'");
  }
  return y;
}

namespace {

ml::FeatureMatrix select_rows(const ml::FeatureMatrix& x, const std::vector<std::size_t>& idx) {
  ml::FeatureMatrix out;
  out.rows = idx.size();
  out.cols = x.cols;
  out.data.reserve(out.rows * out.cols);
  for (std::size_t i : idx) {
    auto row = x.row(i);
    out.data.insert(out.data.end(), row.begin(), row.end());
  }
  return out;
}

std::vector<double> select(const std::vector<double>& v, const std::vector<std::size_t>& idx) {
  std::vector<double> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(v[i]);
  return out;
}

// Stable per-target seeds so every regressor has its own stream.
std::uint64_t target_seed(std::uint64_t train_seed, const std::string& target) {
  return substream_seed(train_seed, target);
}

}  // namespace

std::pair<SurrogateBundle, TrainReport> train_surrogates(const Dataset& ds,
                                                         const TrainOptions& opt) {
  if (ds.rows.size() < 10) throw InsufficientDataError("train_surrogates: need at least 10 rows");
  opt.hp.validate();

  const ml::FeatureMatrix x = dataset_features(ds.rows);
  const auto [train_idx, test_idx] = ml::split_dataset(ds.rows.size(), opt.test_fraction, opt.seed);
  const ml::FeatureMatrix x_train = select_rows(x, train_idx);
  const ml::FeatureMatrix x_test = select_rows(x, test_idx);

  const std::array<std::string, 3> kpi_names = {"edge_rsrp_dbm", "hosr_pct", "load_factor_pct"};

  TrainReport report;
  report.n_train = train_idx.size();
  report.n_test = test_idx.size();

  std::array<ml::ModelKind, 3> chosen{};
  std::array<ml::TrainedModel, 3> best_models;

  for (std::size_t k = 0; k < kpi_names.size(); ++k) {
    const auto y = dataset_target(ds.rows, kpi_names[k]);
    const auto y_train = select(y, train_idx);
    const auto y_test = select(y, test_idx);

    double best = std::numeric_limits<double>::infinity();
    for (ml::ModelKind kind : ml::kAllModelKinds) {
      if (opt.force_kind && kind != *opt.force_kind) continue;
      ml::TrainedModel m =
          ml::fit_model(kind, x_train, y_train, opt.hp, target_seed(opt.seed, kpi_names[k]));
      const double err = ml::rmse(m, x_test, y_test);
      report.entries.push_back({kind, kpi_names[k], err});
      if (err < best) {
        best = err;
        chosen[k] = kind;
        best_models[k] = std::move(m);
      }
    }
  }

  report.chosen_edge_rsrp = chosen[0];
  report.chosen_hosr = chosen[1];
  report.chosen_load_factor = chosen[2];

  SurrogateBundle bundle;
  bundle.train_seed = opt.seed;
  bundle.edge_rsrp = std::move(best_models[0]);
  bundle.hosr = std::move(best_models[1]);
  bundle.load_factor = std::move(best_models[2]);

  // Per-band load regressors reuse the load-factor winner's kind.
  const std::array<std::string, 3> band_names = {"load_1700_pct", "load_2100_pct",
                                                 "load_3500_pct"};
  for (std::size_t b = 0; b < band_names.size(); ++b) {
    const auto y = dataset_target(ds.rows, band_names[b]);
    bundle.band_loads[b] = ml::fit_model(chosen[2], x_train, select(y, train_idx), opt.hp,
                                         target_seed(opt.seed, band_names[b]));
  }

  // Normalization bounds come from the full training dataset so optimizer
  // scores are reproducible from the persisted bundle alone.
  bundle.bounds.edge_rsrp = column_bounds(dataset_target(ds.rows, "edge_rsrp_dbm"));
  bundle.bounds.hosr = column_bounds(dataset_target(ds.rows, "hosr_pct"));
  bundle.bounds.load_factor = column_bounds(dataset_target(ds.rows, "load_factor_pct"));
  return {std::move(bundle), std::move(report)};
}

std::string eval_report_csv(const TrainReport& report) {
  std::ostringstream out;
  out << "kind,kpi,rmse\n";
  for (const auto& e : report.entries)
    out << ml::model_kind_name(e.kind) << ',' << e.kpi << ',' << csv::fmt(e.rmse) << '\n';
  return out.str();
}

namespace {

ordered_json bounds_to_json(const KpiBounds& b) { return ordered_json::array({b.lo, b.hi}); }

KpiBounds bounds_from_json(const ordered_json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

std::string bundle_to_json(const SurrogateBundle& bundle) {
  ordered_json j;
  j["format"] = "hoopt-models-v1";
  j["train_seed"] = bundle.train_seed;
  j["feature_order"] = kCopFeatureNames;
  j["bounds"] = ordered_json{{"edge_rsrp_dbm", bounds_to_json(bundle.bounds.edge_rsrp)},
                             {"hosr_pct", bounds_to_json(bundle.bounds.hosr)},
                             {"load_factor_pct", bounds_to_json(bundle.bounds.load_factor)}};
  j["targets"] = ordered_json{
      {"edge_rsrp_dbm", ml::model_to_json_obj(bundle.edge_rsrp)},
      {"hosr_pct", ml::model_to_json_obj(bundle.hosr)},
      {"load_factor_pct", ml::model_to_json_obj(bundle.load_factor)},
      {"load_1700_pct", ml::model_to_json_obj(bundle.band_loads[0])},
      {"load_2100_pct", ml::model_to_json_obj(bundle.band_loads[1])},
      {"load_3500_pct", ml::model_to_json_obj(bundle.band_loads[2])},
  };
  return j.dump(1);
}

SurrogateBundle bundle_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "hoopt-models-v1")
      throw SchemaError("unsupported model file format");
    SurrogateBundle b;
    b.train_seed = j.at("train_seed").get<std::uint64_t>();
    const auto feats = j.at("feature_order").get<std::vector<std::string>>();
    for (std::size_t i = 0; i < kCopFeatureNames.size(); ++i)
      if (i >= feats.size() || feats[i] != kCopFeatureNames[i])
        throw SchemaError("model file feature order mismatch");
    b.bounds.edge_rsrp = bounds_from_json(j.at("bounds").at("edge_rsrp_dbm"));
    b.bounds.hosr = bounds_from_json(j.at("bounds").at("hosr_pct"));
    b.bounds.load_factor = bounds_from_json(j.at("bounds").at("load_factor_pct"));
    const auto& t = j.at("targets");
    b.edge_rsrp = ml::model_from_json_obj(t.at("edge_rsrp_dbm"));
    b.hosr = ml::model_from_json_obj(t.at("hosr_pct"));
    b.load_factor = ml::model_from_json_obj(t.at("load_factor_pct"));
    b.band_loads[0] = ml::model_from_json_obj(t.at("load_1700_pct"));
    b.band_loads[1] = ml::model_from_json_obj(t.at("load_2100_pct"));
    b.band_loads[2] = ml::model_from_json_obj(t.at("load_3500_pct"));
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("model file schema error: ") + e.what());
  }
}

void save_bundle(const std::string& path, const SurrogateBundle& bundle) {
  csv::write_file_atomic(path, bundle_to_json(bundle));
}

SurrogateBundle load_bundle(const std::string& path) {
  return bundle_from_json(csv::read_file(path));
}

}  // namespace hoopt
