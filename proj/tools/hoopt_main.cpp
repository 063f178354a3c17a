// hoopt: handover parameter sweep, surrogate training, SHAP attribution
// and annealing-vs-brute-force optimization over a seeded radio simulator.
//
// Exit codes: 0 success, 2 config error, 3 missing input, 4 schema error.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "hoopt/config.hpp"
#include "hoopt/csv.hpp"
#include "hoopt/errors.hpp"
#include "hoopt/opt.hpp"
#include "hoopt/shap.hpp"
#include "hoopt/surrogate.hpp"
#include "hoopt/sweep.hpp"

namespace fs = std::filesystem;
using namespace hoopt;

namespace {

struct GlobalArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string out_dir = ".";
};

RunConfig effective_config(const GlobalArgs& g) {
  RunConfig cfg = g.config_path.empty() ? RunConfig{} : load_config(g.config_path);
  if (g.seed) cfg.net.master_seed = *g.seed;
  if (g.jobs) cfg.jobs = *g.jobs;
  cfg.validate();
  return cfg;
}

std::string out_path(const GlobalArgs& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  return (fs::path(g.out_dir) / name).string();
}

// Comment header stamped into every produced file so outputs are
// traceable to the exact configuration that made them.
std::string stamp(const RunConfig& cfg) {
  return "# hoopt config_hash=" + config_hash(cfg) +
         " master_seed=" + std::to_string(cfg.net.master_seed) + "\n";
}

void print_kpis(const CopVector& cop, const KpiVector& k, const HandoverLedger& ledger) {
  std::cout << "cop " << cop.str() << "\n"
            << "edge_rsrp_dbm=" << csv::fmt(k.edge_rsrp_dbm)
            << " hosr_pct=" << csv::fmt(k.hosr_pct)
            << " load_factor_pct=" << csv::fmt(k.load_factor_pct);
  for (std::size_t b = 0; b < k.band_loads.size(); ++b)
    std::cout << " load_band" << b << "_pct=" << csv::fmt(k.band_loads[b] * 100.0);
  std::cout << " hos=" << ledger.hos << " hof=" << ledger.hof << "\n";
}

int cmd_simulate(const GlobalArgs& g, const CopVector& cop, const std::string& event_log,
                 const std::string& topology_out) {
  RunConfig cfg = effective_config(g);
  validate_cop(cop);
  Scenario sc = cfg.scenario();
  if (!topology_out.empty())
    csv::write_file_atomic(out_path(g, topology_out), stamp(cfg) + topology_csv(sc));
  RunOptions opt;
  opt.keep_event_log = !event_log.empty();
  RunResult res = run_simulation(sc, cop, cfg.ho, substream_seed(cfg.net.master_seed, "run"), opt);
  print_kpis(cop, res.kpis, res.ledger);
  if (!event_log.empty())
    csv::write_file_atomic(out_path(g, event_log), stamp(cfg) + event_log_csv(res.events));
  return 0;
}

int cmd_sweep(const GlobalArgs& g, std::size_t subsample_override, const std::string& out_name) {
  RunConfig cfg = effective_config(g);
  if (subsample_override) cfg.sweep_subsample = subsample_override;
  Scenario sc = cfg.scenario();
  SweepOptions opt;
  opt.jobs = cfg.jobs;
  opt.subsample = cfg.sweep_subsample;
  Dataset ds = run_sweep(sc, cfg.ho, cfg.grid, opt);
  ds.meta.config_hash = config_hash(cfg);
  const std::string path = out_path(g, out_name);
  write_dataset(path, ds);
  std::cout << "wrote " << ds.rows.size() << " rows to " << path << "\n";
  return 0;
}

int cmd_train(const GlobalArgs& g, const std::string& dataset_path, const std::string& kind_name) {
  RunConfig cfg = effective_config(g);
  Dataset ds = read_dataset(dataset_path);
  TrainOptions opt;
  opt.test_fraction = cfg.test_fraction;
  opt.seed = cfg.model_seed;
  opt.hp = cfg.hp;
  if (!kind_name.empty()) opt.force_kind = ml::model_kind_from(kind_name);
  auto [bundle, report] = train_surrogates(ds, opt);
  const std::string models_path = out_path(g, "models.json");
  save_bundle(models_path, bundle);
  csv::write_file_atomic(out_path(g, "eval.csv"), stamp(cfg) + eval_report_csv(report));
  std::cout << "trained on " << report.n_train << " rows, tested on " << report.n_test << "\n";
  for (const auto& e : report.entries)
    std::cout << "rmse " << ml::model_kind_name(e.kind) << " " << e.kpi << " = "
              << csv::fmt(e.rmse) << "\n";
  std::cout << "chosen: edge_rsrp=" << ml::model_kind_name(report.chosen_edge_rsrp)
            << " hosr=" << ml::model_kind_name(report.chosen_hosr)
            << " load_factor=" << ml::model_kind_name(report.chosen_load_factor) << "\n"
            << "wrote " << models_path << "\n";
  return 0;
}

int cmd_explain(const GlobalArgs& g, const std::string& models_path,
                const std::string& dataset_path) {
  RunConfig cfg = effective_config(g);
  SurrogateBundle bundle = load_bundle(models_path);
  Dataset ds = read_dataset(dataset_path);
  auto entries = importance_summary(bundle, ds.rows, cfg.shap_background, cfg.model_seed);
  const std::string path = out_path(g, "importance.csv");
  csv::write_file_atomic(path, stamp(cfg) + importance_csv(entries));
  std::cout << "wrote " << path << "\n";
  for (const auto& e : entries)
    std::cout << e.kpi << " " << e.feature << " " << csv::fmt(e.mean_abs_shap) << "\n";
  return 0;
}

int cmd_optimize(const GlobalArgs& g, const std::string& models_path, bool table3,
                 std::optional<double> alpha, std::optional<double> beta, bool validate_winner) {
  RunConfig cfg = effective_config(g);
  SurrogateBundle bundle = load_bundle(models_path);
  ObjectiveWeights w = cfg.weights;
  if (alpha) w.alpha = *alpha;
  if (beta) w.beta = *beta;
  std::vector<ObjectiveWeights> w_list = table3 ? kTable3Weights : std::vector<ObjectiveWeights>{w};

  auto rows = compare(bundle, cfg.grid, w_list, cfg.constraints, cfg.schedule, cfg.sa_runs,
                      cfg.net.master_seed);
  const std::string path = out_path(g, "comparison.csv");
  csv::write_file_atomic(path, stamp(cfg) + comparison_csv(rows));
  std::cout << "wrote " << path << "\n";
  for (const auto& r : rows) {
    std::cout << "alpha=" << csv::fmt(r.alpha) << " beta=" << csv::fmt(r.beta)
              << " brute_force=" << csv::fmt(r.brute_force) << " at " << r.bf_cop.str()
              << " sa_median=" << csv::fmt(r.sa_median) << " speedup=" << csv::fmt(r.speedup)
              << "\n";
    if (validate_winner) {
      Scenario sc = cfg.scenario();
      DatasetRow check = run_point(sc, cfg.ho, r.bf_cop, substream_seed(cfg.net.master_seed, "validate"));
      std::cout << "  re-simulated winner: edge_rsrp_dbm=" << csv::fmt(check.kpis.edge_rsrp_dbm)
                << " hosr_pct=" << csv::fmt(check.kpis.hosr_pct)
                << " load_factor_pct=" << csv::fmt(check.kpis.load_factor_pct) << "\n";
    }
  }
  return 0;
}

// KPI surfaces over (th1, th2) for a fixed A3/A5-TTT slice, straight from
// a swept dataset, plus an argmax-per-A3-setting coupling table.
int cmd_report(const GlobalArgs& g, const std::string& dataset_path,
               const std::string& models_path, int a5_ttt, int a3_ttt, double a3_off) {
  RunConfig cfg = effective_config(g);
  Dataset ds = read_dataset(dataset_path);

  const std::array<std::string, 3> kpis = {"edge_rsrp_dbm", "hosr_pct", "load_factor_pct"};
  for (const auto& kpi : kpis) {
    std::ostringstream out;
    out << stamp(cfg) << "a5_th1_dbm,a5_th2_dbm,kpi_value\n";
    // Mean over rows matching the slice (subsampled datasets may leave
    // holes; only observed cells are emitted).
    std::map<std::pair<double, double>, std::pair<double, int>> agg;
    for (const auto& r : ds.rows) {
      if (r.cop.a5_ttt_ms != a5_ttt || r.cop.a3_ttt_ms != a3_ttt || r.cop.a3_off_db != a3_off)
        continue;
      auto& slot = agg[{r.cop.a5_th1_dbm, r.cop.a5_th2_dbm}];
      slot.first += dataset_target({r}, kpi)[0];
      slot.second += 1;
    }
    for (const auto& [key, slot] : agg)
      out << csv::fmt(key.first) << ',' << csv::fmt(key.second) << ','
          << csv::fmt(slot.first / slot.second) << '\n';
    csv::write_file_atomic(out_path(g, "surface_" + kpi + ".csv"), out.str());
  }

  // Coupling table: where the (th1, th2) argmax of each KPI sits for every
  // observed A3 setting.
  {
    std::ostringstream out;
    out << stamp(cfg) << "kpi,a3_ttt_ms,a3_off_db,argmax_a5_th1_dbm,argmax_a5_th2_dbm,value\n";
    for (const auto& kpi : kpis) {
      std::map<std::pair<int, double>, std::map<std::pair<double, double>, std::pair<double, int>>> by_a3;
      for (const auto& r : ds.rows) {
        if (r.cop.a5_ttt_ms != a5_ttt) continue;
        auto& slot = by_a3[{r.cop.a3_ttt_ms, r.cop.a3_off_db}][{r.cop.a5_th1_dbm, r.cop.a5_th2_dbm}];
        slot.first += dataset_target({r}, kpi)[0];
        slot.second += 1;
      }
      for (const auto& [a3key, cells] : by_a3) {
        double best = 0.0;
        std::pair<double, double> best_th{0, 0};
        bool first = true;
        for (const auto& [th, slot] : cells) {
          const double v = slot.first / slot.second;
          if (first || v > best) { best = v; best_th = th; first = false; }
        }
        out << kpi << ',' << a3key.first << ',' << csv::fmt(a3key.second) << ','
            << csv::fmt(best_th.first) << ',' << csv::fmt(best_th.second) << ',' << csv::fmt(best)
            << '\n';
      }
    }
    csv::write_file_atomic(out_path(g, "coupling.csv"), out.str());
  }

  // Objective surface for the same slice when models are available.
  if (!models_path.empty()) {
    SurrogateBundle bundle = load_bundle(models_path);
    PartialCop fixed;
    fixed.a5_ttt_ms = a5_ttt;
    fixed.a3_ttt_ms = a3_ttt;
    fixed.a3_off_db = a3_off;
    SliceResult slice = surface_slice(bundle, cfg.grid, fixed, cfg.weights, cfg.constraints);
    csv::write_file_atomic(out_path(g, "objective_surface.csv"), stamp(cfg) + slice_csv(slice));
    std::cout << "objective surface: " << slice.scores.size() << " points, "
              << slice.local_maxima << " strict local maxima\n";
  }
  std::cout << "wrote surface_*.csv and coupling.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"handover parameter optimization pipeline"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--config", g.config_path, "configuration file (INI)");
  app.add_option("--seed", g.seed, "override network.master_seed");
  app.add_option("--jobs", g.jobs, "override sweep parallelism");
  app.add_option("--out", g.out_dir, "output directory");

  // simulate
  auto* sim = app.add_subcommand("simulate", "single seeded run, print KPIs");
  CopVector cop;
  std::string event_log, topology_out;
  sim->add_option("--a5-ttt", cop.a5_ttt_ms, "A5 time-to-trigger [ms]");
  sim->add_option("--a5-th1", cop.a5_th1_dbm, "A5 threshold1 [dBm]");
  sim->add_option("--a5-th2", cop.a5_th2_dbm, "A5 threshold2 [dBm]");
  sim->add_option("--a3-ttt", cop.a3_ttt_ms, "A3 time-to-trigger [ms]");
  sim->add_option("--a3-off", cop.a3_off_db, "A3 offset [dB]");
  sim->add_option("--event-log", event_log, "write handover event CSV");
  sim->add_option("--topology", topology_out, "write topology CSV");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run the COP grid, write dataset CSV");
  std::size_t grid_subsample = 0;
  std::string sweep_out = "dataset.csv";
  sweep->add_option("--grid-subsample", grid_subsample, "run only N deterministic grid points");
  sweep->add_option("--dataset-name", sweep_out, "output file name");

  // train
  auto* train = app.add_subcommand("train", "fit surrogate models from a dataset");
  std::string dataset_path, force_kind;
  train->add_option("--dataset", dataset_path, "dataset CSV")->required();
  train->add_option("--kind", force_kind, "force one model kind (linear|poly2|tree|forest|gbt)");

  // explain
  auto* explain = app.add_subcommand("explain", "SHAP feature importance per KPI");
  std::string models_path;
  explain->add_option("--models", models_path, "models.json")->required();
  explain->add_option("--dataset", dataset_path, "dataset CSV")->required();

  // optimize
  auto* optimize = app.add_subcommand("optimize", "brute force vs simulated annealing");
  bool table3 = false, validate_winner = false;
  std::optional<double> alpha, beta;
  optimize->add_option("--models", models_path, "models.json")->required();
  optimize->add_option("--alpha", alpha, "edge-RSRP weight");
  optimize->add_option("--beta", beta, "HOSR weight");
  optimize->add_flag("--table3", table3, "run the four reference weight pairs");
  optimize->add_flag("--validate", validate_winner, "re-simulate each brute-force winner");

  // report
  auto* report = app.add_subcommand("report", "KPI surface and coupling CSVs from a dataset");
  int r_a5_ttt = 64, r_a3_ttt = 64;
  double r_a3_off = 0.0;
  std::string report_models;
  report->add_option("--dataset", dataset_path, "dataset CSV")->required();
  report->add_option("--models", report_models, "models.json for the objective surface");
  report->add_option("--a5-ttt", r_a5_ttt, "slice A5 TTT [ms]");
  report->add_option("--a3-ttt", r_a3_ttt, "slice A3 TTT [ms]");
  report->add_option("--a3-off", r_a3_off, "slice A3 offset [dB]");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(g, cop, event_log, topology_out);
    if (sweep->parsed()) return cmd_sweep(g, grid_subsample, sweep_out);
    if (train->parsed()) return cmd_train(g, dataset_path, force_kind);
    if (explain->parsed()) return cmd_explain(g, models_path, dataset_path);
    if (optimize->parsed()) return cmd_optimize(g, models_path, table3, alpha, beta, validate_winner);
    if (report->parsed()) return cmd_report(g, dataset_path, report_models, r_a5_ttt, r_a3_ttt, r_a3_off);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const MissingInputError& e) {
    std::cerr << "missing input: " << e.what() << "\n";
    return 3;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
