#pragma once

#include <cstdint>
#include <string>

#include "hoopt/ho/cop.hpp"
#include "hoopt/ml/model.hpp"
#include "hoopt/opt.hpp"
#include "hoopt/sim/topology.hpp"
#include "hoopt/sweep.hpp"

namespace hoopt {

/// Everything a pipeline stage needs, with defaults reproducing the
/// reference deployment and COP grid. Parsed from an INI-style file with
/// one section per concern; unknown sections or keys are rejected.
struct RunConfig {
  // [network]
  NetworkConfig net;
  double macro_tx_dbm = 35.0;
  double small_tx_dbm = 20.0;
  double macro_height_m = 30.0;
  double small_height_m = 20.0;

  // [propagation]
  PropagationModel prop;

  // [handover]
  HandoverConfig ho;

  // [sweep]
  SweepGrid grid;
  std::size_t sweep_subsample = 0;
  int jobs = 1;

  // [model]
  double test_fraction = 0.2;
  std::uint64_t model_seed = 7;
  ml::Hyperparams hp;
  std::size_t shap_background = 200;

  // [optimizer]
  ObjectiveWeights weights;
  OptConstraints constraints;
  AnnealingSchedule schedule;
  int sa_runs = 50;

  std::vector<BandConfig> bands() const {
    return default_bands(macro_tx_dbm, small_tx_dbm, macro_height_m, small_height_m);
  }
  Scenario scenario() const { return build_default_scenario(net, prop, bands()); }

  void validate() const;  // throws ConfigError
};

/// Parse INI text (sections, key = value, '#'/';' comments). Unknown keys
/// raise ConfigError naming the key.
RunConfig parse_config(const std::string& text);

/// Read + parse; missing file raises MissingInputError.
RunConfig load_config(const std::string& path);

/// Canonical dump of every effective setting; equal configs hash equally.
std::string canonical_config(const RunConfig& cfg);

/// FNV-1a hash of the canonical dump, as fixed-width hex.
std::string config_hash(const RunConfig& cfg);

}  // namespace hoopt
