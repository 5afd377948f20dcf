// Copyright 2026 the bslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>

#include "bslab/analytics.hpp"
#include "bslab/monitor.hpp"
#include "bslab/projective.hpp"
#include "bslab/trajectory.hpp"

namespace bslab {

enum class CampaignMode : std::uint8_t { Continuous, Projective, AnalyticsOnly };
enum class EngineKind : std::uint8_t { Auto, DensityMatrix, PureState, GaugeBloch };

struct ExperimentConfig {
  int version = 1;
  CampaignMode mode = CampaignMode::Continuous;
  std::uint64_t seed = 1;
  int n_traj = 10000;  // per initial logical state
  int workers = 0;     // 0: BSLAB_WORKERS or hardware

  // Detector bank: uniform strength; tau_m sets the time unit.
  double tau_m = 1.0;
  double eta = 1.0;

  DecoherenceModel decoherence = Depolarizing{0.0};
  InjectionMode injection = InjectionMode::LindbladContinuous;
  EngineKind engine = EngineKind::Auto;

  CorrelatorConfig correlator;  // tau_c <= 0 requests the optimal value
  bool thresholds_armed = true;

  double dt_step = 0.0;     // 0: 5e-3 / Gamma_m
  double total_time = 0.0;  // 0: auto from the predicted termination rate
  int chi_samples = 16;

  // Projective-mode parameters.
  double proj_dt = 1.0;
  int proj_cycles = 200;

  std::string output_dir;  // empty: keep results in memory only
  bool dump_traces = false;
  int max_trace_trajectories = 4;

  DetectorBank bank() const { return DetectorBank::uniform(tau_m, eta); }
  double resolved_dt() const;
  double resolved_tau_c() const;
  CorrelatorConfig resolved_correlator() const;
  double predicted_gamma_term() const;
  double resolved_total_time() const;
  EngineKind resolved_engine() const;

  /// Throws std::invalid_argument with a field path on bad values.
  void validate_config() const;
};

struct TrajectoryRecord {
  int id = 0;
  int state_index = 0;
  bool survived = true;
  double alarm_time = -1.0;
  int alarm_pair = -1;
  int n_jumps = 0;
  std::string jump_summary;
  DecodeAccumulator final_decode;
};

struct CampaignResult {
  ExperimentConfig config;
  std::vector<double> sample_times;
  // [state][sample]
  std::vector<std::vector<double>> survival;
  std::vector<std::vector<DecodeAccumulator>> decode_sums;
  std::vector<double> pooled_survival;
  std::vector<ChiMatrix> chis;
  TerminationFit term_fit;
  ChiSlopes chi_slopes;
  double survival_spread_sigmas = 0.0;  // max |p_s - mean| / binomial sigma
  std::vector<TrajectoryRecord> records;
  analytics::RatePrediction prediction;  // analytic expectations at this point
  double wall_seconds = 0.0;
  int workers_used = 1;

  // Projective mode keeps the deterministic run too.
  std::optional<ProjectiveRunResult> projective;
};

/// Executes n_traj trajectories per tomography input (continuous mode), the
/// deterministic two-step protocol (projective mode), or closed forms only.
/// Fully reproducible from (config, seed); aggregates are bit-identical for
/// any worker count.
CampaignResult run_campaign(const ExperimentConfig& config);

/// Serialization (versioned schema).
ExperimentConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const ExperimentConfig& config);
std::string result_to_json_text(const CampaignResult& result);

/// Writes campaign.json and trajectories.csv (and traces/ when enabled).
void write_outputs(const CampaignResult& result, const std::string& dir);

struct SweepAxis {
  std::string name;  // T_c | theta | tau_c | eta | tau_m | n_traj | total_time
  std::vector<double> values;
};

struct SweepRow {
  double axis_value = 0.0;
  std::string metric;
  double value = 0.0;
  double stderr_ = 0.0;
};

struct SweepResult {
  SweepAxis axis;
  std::vector<SweepRow> rows;
};

SweepResult run_sweep(const ExperimentConfig& base, const SweepAxis& axis);
std::string sweep_to_csv(const SweepResult& sweep);
std::string sweep_to_plotdata_json(const SweepResult& sweep);
std::string result_to_plotdata_json(const CampaignResult& result);

}  // namespace bslab
