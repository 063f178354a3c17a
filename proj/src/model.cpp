#include "hoopt/ml/model.hpp"

#include <nlohmann/json.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hoopt/errors.hpp"
#include "hoopt/rng.hpp"

namespace hoopt::ml {

using ordered_json = nlohmann::ordered_json;

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::linear: return "linear";
    case ModelKind::poly2: return "poly2";
    case ModelKind::tree: return "tree";
    case ModelKind::forest: return "forest";
    case ModelKind::gbt: return "gbt";
  }
  return "?";
}

ModelKind model_kind_from(const std::string& name) {
  for (ModelKind k : kAllModelKinds)
    if (name == model_kind_name(k)) return k;
  throw SchemaError("unknown model kind '" + name + "'");
}

void Hyperparams::validate() const {
  if (tree_max_depth <= 0 || tree_min_leaf <= 0 || forest_trees <= 0 || gbt_rounds < 0 ||
      gbt_depth <= 0 || gbt_learning_rate <= 0.0 || gbt_lambda < 0.0)
    throw std::invalid_argument("hyperparameters must be positive");
  if (forest_max_features <= 0 || forest_max_features > 5)
    throw std::invalid_argument("forest_max_features must be in [1, 5]");
}

double TrainedModel::predict(std::span<const double> x) const {
  return std::visit([&](const auto& m) { return m.predict(x); }, reg);
}

TrainedModel::EnsembleView TrainedModel::ensemble_view() const {
  EnsembleView view;
  switch (kind) {
    case ModelKind::tree: {
      view.trees.emplace_back(&std::get<RegressionTree>(reg), 1.0);
      break;
    }
    case ModelKind::forest: {
      const auto& f = std::get<ForestModel>(reg);
      const double w = 1.0 / static_cast<double>(f.trees.size());
      for (const auto& t : f.trees) view.trees.emplace_back(&t, w);
      break;
    }
    case ModelKind::gbt: {
      const auto& g = std::get<GbtModel>(reg);
      view.base = g.base_score;
      for (const auto& t : g.trees) view.trees.emplace_back(&t, g.learning_rate);
      break;
    }
    default:
      throw std::invalid_argument("ensemble_view: not a tree ensemble");
  }
  return view;
}

TrainedModel fit_model(ModelKind kind, const FeatureMatrix& x, std::span<const double> y,
                       const Hyperparams& hp, std::uint64_t seed) {
  if (x.rows == 0) throw InsufficientDataError("fit_model: empty training set");
  hp.validate();
  TrainedModel m;
  m.kind = kind;
  m.hp = hp;
  m.seed = seed;
  switch (kind) {
    case ModelKind::linear: m.reg = fit_linear(x, y, false); break;
    case ModelKind::poly2: m.reg = fit_linear(x, y, true); break;
    case ModelKind::tree: {
      std::vector<double> grad(x.rows), hess(x.rows, 1.0);
      for (std::size_t i = 0; i < x.rows; ++i) grad[i] = -y[i];
      TreeGrowthParams tp{hp.tree_max_depth, static_cast<std::size_t>(hp.tree_min_leaf), 0.0, 0};
      m.reg = grow_tree(x, grad, hess, tp);
      break;
    }
    case ModelKind::forest: {
      ForestParams fp;
      fp.n_trees = hp.forest_trees;
      fp.max_features = hp.forest_max_features;
      fp.bootstrap = hp.forest_bootstrap;
      fp.tree = TreeGrowthParams{hp.tree_max_depth, static_cast<std::size_t>(hp.tree_min_leaf), 0.0, 0};
      m.reg = fit_forest(x, y, fp, seed);
      break;
    }
    case ModelKind::gbt: {
      GbtParams gp{hp.gbt_rounds, hp.gbt_depth, hp.gbt_learning_rate, hp.gbt_lambda};
      m.reg = fit_gbt(x, y, gp);
      break;
    }
  }
  return m;
}

double rmse(const TrainedModel& model, const FeatureMatrix& x, std::span<const double> y) {
  if (x.rows == 0) throw InsufficientDataError("rmse: empty evaluation set");
  double s = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double e = model.predict(x.row(i)) - y[i];
    s += e * e;
  }
  return std::sqrt(s / static_cast<double>(x.rows));
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_dataset(
    std::size_t n, double test_fraction, std::uint64_t seed) {
  if (n < 10) throw InsufficientDataError("split_dataset: need at least 10 rows");
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw std::invalid_argument("split_dataset: test_fraction must be in (0, 1)");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(substream_seed(seed, "train-test-split"));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.bounded(n - i));
    std::swap(idx[i], idx[j]);
  }
  auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
  n_test = std::min(std::max<std::size_t>(n_test, 1), n - 1);
  std::vector<std::size_t> test(idx.begin(), idx.begin() + n_test);
  std::vector<std::size_t> train(idx.begin() + n_test, idx.end());
  return {train, test};
}

namespace {

ordered_json tree_to_json(const RegressionTree& t) {
  auto f = ordered_json::array();
  auto th = ordered_json::array();
  auto l = ordered_json::array();
  auto r = ordered_json::array();
  auto v = ordered_json::array();
  for (const auto& n : t.nodes) {
    f.push_back(n.feature);
    th.push_back(n.threshold);
    l.push_back(n.left);
    r.push_back(n.right);
    v.push_back(n.value);
  }
  ordered_json j;
  j["feature"] = std::move(f);
  j["threshold"] = std::move(th);
  j["left"] = std::move(l);
  j["right"] = std::move(r);
  j["value"] = std::move(v);
  return j;
}

RegressionTree tree_from_json(const ordered_json& j) {
  RegressionTree t;
  const auto& f = j.at("feature");
  const auto& th = j.at("threshold");
  const auto& l = j.at("left");
  const auto& r = j.at("right");
  const auto& v = j.at("value");
  const std::size_t n = f.size();
  if (th.size() != n || l.size() != n || r.size() != n || v.size() != n)
    throw SchemaError("tree arrays have mismatched lengths");
  t.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.nodes[i] = {f[i].get<int>(), th[i].get<double>(), l[i].get<int>(), r[i].get<int>(),
                  v[i].get<double>()};
  }
  return t;
}

ordered_json hp_to_json(const Hyperparams& hp) {
  return ordered_json{{"tree_max_depth", hp.tree_max_depth},
                      {"tree_min_leaf", hp.tree_min_leaf},
                      {"forest_trees", hp.forest_trees},
                      {"forest_max_features", hp.forest_max_features},
                      {"forest_bootstrap", hp.forest_bootstrap},
                      {"gbt_rounds", hp.gbt_rounds},
                      {"gbt_depth", hp.gbt_depth},
                      {"gbt_learning_rate", hp.gbt_learning_rate},
                      {"gbt_lambda", hp.gbt_lambda}};
}

Hyperparams hp_from_json(const ordered_json& j) {
  Hyperparams hp;
  hp.tree_max_depth = j.at("tree_max_depth").get<int>();
  hp.tree_min_leaf = j.at("tree_min_leaf").get<int>();
  hp.forest_trees = j.at("forest_trees").get<int>();
  hp.forest_max_features = j.at("forest_max_features").get<int>();
  hp.forest_bootstrap = j.at("forest_bootstrap").get<bool>();
  hp.gbt_rounds = j.at("gbt_rounds").get<int>();
  hp.gbt_depth = j.at("gbt_depth").get<int>();
  hp.gbt_learning_rate = j.at("gbt_learning_rate").get<double>();
  hp.gbt_lambda = j.at("gbt_lambda").get<double>();
  return hp;
}

}  // namespace

ordered_json model_to_json_obj(const TrainedModel& m);
TrainedModel model_from_json_obj(const ordered_json& j);

ordered_json model_to_json_obj(const TrainedModel& m) {
  ordered_json j;
  j["kind"] = model_kind_name(m.kind);
  j["seed"] = m.seed;
  j["hyperparams"] = hp_to_json(m.hp);
  switch (m.kind) {
    case ModelKind::linear:
    case ModelKind::poly2: {
      const auto& lm = std::get<LinearModel>(m.reg);
      j["linear"] = ordered_json{{"poly2", lm.poly2},
                                 {"weights", lm.weights},
                                 {"intercept", lm.intercept},
                                 {"degenerate", lm.degenerate}};
      break;
    }
    case ModelKind::tree:
      j["tree"] = tree_to_json(std::get<RegressionTree>(m.reg));
      break;
    case ModelKind::forest: {
      auto arr = ordered_json::array();
      for (const auto& t : std::get<ForestModel>(m.reg).trees) arr.push_back(tree_to_json(t));
      j["forest"] = ordered_json{{"trees", std::move(arr)}};
      break;
    }
    case ModelKind::gbt: {
      const auto& g = std::get<GbtModel>(m.reg);
      auto arr = ordered_json::array();
      for (const auto& t : g.trees) arr.push_back(tree_to_json(t));
      j["gbt"] = ordered_json{{"base_score", g.base_score},
                              {"learning_rate", g.learning_rate},
                              {"trees", std::move(arr)}};
      break;
    }
  }
  return j;
}

TrainedModel model_from_json_obj(const ordered_json& j) {
  TrainedModel m;
  m.kind = model_kind_from(j.at("kind").get<std::string>());
  m.seed = j.at("seed").get<std::uint64_t>();
  m.hp = hp_from_json(j.at("hyperparams"));
  switch (m.kind) {
    case ModelKind::linear:
    case ModelKind::poly2: {
      const auto& lj = j.at("linear");
      LinearModel lm;
      lm.poly2 = lj.at("poly2").get<bool>();
      lm.weights = lj.at("weights").get<std::vector<double>>();
      lm.intercept = lj.at("intercept").get<double>();
      lm.degenerate = lj.at("degenerate").get<bool>();
      m.reg = std::move(lm);
      break;
    }
    case ModelKind::tree:
      m.reg = tree_from_json(j.at("tree"));
      break;
    case ModelKind::forest: {
      ForestModel f;
      for (const auto& tj : j.at("forest").at("trees")) f.trees.push_back(tree_from_json(tj));
      m.reg = std::move(f);
      break;
    }
    case ModelKind::gbt: {
      GbtModel g;
      g.base_score = j.at("gbt").at("base_score").get<double>();
      g.learning_rate = j.at("gbt").at("learning_rate").get<double>();
      for (const auto& tj : j.at("gbt").at("trees")) g.trees.push_back(tree_from_json(tj));
      m.reg = std::move(g);
      break;
    }
  }
  return m;
}

std::string model_to_json(const TrainedModel& model) { return model_to_json_obj(model).dump(); }

TrainedModel model_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  return model_from_json_obj(j);
}

}  // namespace hoopt::ml
