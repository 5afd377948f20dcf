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

#include "bslab/campaign.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "bslab/parallel.hpp"

namespace bslab {

using nlohmann::json;

namespace {

constexpr int kChunk = 32;  // trajectories per deterministic reduction chunk

LogicalBloch bloch_of_amplitudes(const std::pair<cd, cd>& ab) {
  const cd a = ab.first, b = ab.second;
  return {2.0 * (a * std::conj(b)).real(), -2.0 * (a * std::conj(b)).imag(),
          std::norm(a) - std::norm(b)};
}

std::string summarize_jumps(const std::vector<JumpEvent>& jumps) {
  std::ostringstream os;
  const std::size_t keep = std::min<std::size_t>(jumps.size(), 8);
  for (std::size_t i = 0; i < keep; ++i) {
    if (i) os << ';';
    os << jumps[i].kind << jumps[i].qubit << '@' << jumps[i].t;
  }
  if (jumps.size() > keep) os << ";+" << (jumps.size() - keep);
  return os.str();
}

int subspace_index_of_weights(const std::array<double, 4>& w) {
  int best = 0;
  for (int b = 1; b < 4; ++b) {
    if (w[b] > w[best]) best = b;
  }
  return best;
}

/// Uniform engine adapter so the campaign loop is written once.
struct EngineHandle {
  std::unique_ptr<SmeTrajectory> dm;
  std::unique_ptr<PureTrajectory> pure;
  std::unique_ptr<GaugeBlochTrajectory> bloch;
  LogicalBloch initial;

  SignalFrame step(Rng& rng) {
    if (dm) return dm->step(rng);
    if (pure) return pure->step(rng);
    return bloch->step(rng);
  }
  DecodeAccumulator decode() const {
    if (dm) return dm->decode();
    if (pure) return pure->decode();
    return bloch->decode(initial);
  }
  const std::vector<JumpEvent>& jump_log() const {
    if (dm) return dm->jump_log();
    if (pure) return pure->jump_log();
    return bloch->jump_log();
  }
  int subspace_index() const {
    if (dm) return subspace_index_of_weights(dm->block_weights());
    if (pure) return subspace_index_of_weights(pure->block_weights());
    return static_cast<int>(bloch->state().subspace);
  }
};

EngineHandle make_engine(const ExperimentConfig& cfg, const DetectorBank& bank,
                         const ErrorInjectionPlan& plan, double dt,
                         int state_index) {
  const auto amplitudes = tomography_amplitudes()[state_index];
  EngineHandle h;
  h.initial = bloch_of_amplitudes(amplitudes);
  switch (cfg.resolved_engine()) {
    case EngineKind::DensityMatrix:
      h.dm = std::make_unique<SmeTrajectory>(bank, plan, dt,
                                             encode(amplitudes.first, amplitudes.second));
      break;
    case EngineKind::PureState:
      h.pure = std::make_unique<PureTrajectory>(
          bank, plan, dt, encode(amplitudes.first, amplitudes.second));
      break;
    default:
      h.bloch = std::make_unique<GaugeBlochTrajectory>(bank, plan, dt);
      break;
  }
  return h;
}

const char* subspace_name(int b) {
  static const char* names[4] = {"Q0", "QX", "QY", "QZ"};
  return names[b];
}

}  // namespace

double ExperimentConfig::resolved_dt() const {
  if (dt_step > 0.0) return dt_step;
  const double gamma_m = 1.0 / (2.0 * eta * tau_m);
  return 5e-3 / gamma_m;
}

double ExperimentConfig::resolved_tau_c() const {
  if (correlator.tau_c > 0.0) return correlator.tau_c;
  return analytics::optimal_tau_c(eta) * tau_m;
}

CorrelatorConfig ExperimentConfig::resolved_correlator() const {
  CorrelatorConfig c = correlator;
  c.tau_c = resolved_tau_c();
  return c;
}

double ExperimentConfig::predicted_gamma_term() const {
  double gamma = single_error_rate_sum(decoherence);
  if (thresholds_armed) {
    const auto stats = analytics::correlator_stats(eta, resolved_tau_c() / tau_m);
    const double gfal =
        analytics::false_alarm_rate(correlator.kernel,
                                    analytics::ThresholdPolicy::FixedTheta, stats,
                                    correlator.T_c / tau_m, correlator.theta) /
        tau_m;
    gamma += 2.0 * gfal;
  }
  return gamma;
}

double ExperimentConfig::resolved_total_time() const {
  if (total_time > 0.0) return total_time;
  const double gamma = predicted_gamma_term();
  if (gamma <= 0.0) {
    throw std::invalid_argument(
        "total_time: no decoherence and no armed thresholds; set it explicitly");
  }
  return std::min(std::max(2.0 / gamma, 100.0 * tau_m), 2e4 * tau_m);
}

EngineKind ExperimentConfig::resolved_engine() const {
  if (engine != EngineKind::Auto) return engine;
  const bool lindblad =
      injection == InjectionMode::LindbladContinuous && !is_trivial(decoherence);
  if (lindblad) return EngineKind::DensityMatrix;
  if (eta < 1.0) return EngineKind::DensityMatrix;
  if (std::holds_alternative<Relaxation>(decoherence) && !is_trivial(decoherence)) {
    return EngineKind::PureState;
  }
  return EngineKind::GaugeBloch;
}

void ExperimentConfig::validate_config() const {
  if (version != 1) throw std::invalid_argument("version: only schema 1 is supported");
  if (n_traj < 1) throw std::invalid_argument("n_traj: must be >= 1");
  if (tau_m <= 0.0) throw std::invalid_argument("bank.tau_m: must be > 0");
  if (eta <= 0.0 || eta > 1.0) throw std::invalid_argument("bank.eta: must be in (0, 1]");
  validate(decoherence);
  bank().validate();
  if (mode == CampaignMode::Continuous) {
    CorrelatorConfig c = resolved_correlator();
    c.validate();
    const double dt = resolved_dt();
    if (dt <= 0.0 || dt > max_dt_step(bank()) * (1.0 + 1e-9)) {
      throw std::invalid_argument("dt_step: must be in (0, 5e-3 * min(2 tau_k)]");
    }
    if (chi_samples < 3) throw std::invalid_argument("chi_samples: must be >= 3");
    resolved_total_time();
    const EngineKind kind = resolved_engine();
    if (kind == EngineKind::PureState || kind == EngineKind::GaugeBloch) {
      if (injection == InjectionMode::LindbladContinuous && !is_trivial(decoherence)) {
        throw std::invalid_argument(
            "engine: pure/bloch engines need jump-sampling decoherence");
      }
    }
    if (kind == EngineKind::GaugeBloch &&
        std::holds_alternative<Relaxation>(decoherence) && !is_trivial(decoherence)) {
      throw std::invalid_argument("engine: gauge-Bloch engine cannot sample lowering jumps");
    }
  } else if (mode == CampaignMode::Projective) {
    if (proj_dt <= 0.0) throw std::invalid_argument("projective.dt: must be > 0");
    if (proj_cycles < 5) throw std::invalid_argument("projective.cycles: must be >= 5");
  }
}

namespace {

struct ChunkSums {
  // [state][sample]
  std::vector<std::vector<DecodeAccumulator>> decode;
};

void run_continuous(const ExperimentConfig& cfg, CampaignResult& result) {
  const DetectorBank bank = cfg.bank();
  const double dt = cfg.resolved_dt();
  const double total_time = cfg.resolved_total_time();
  const CorrelatorConfig corr_cfg = cfg.resolved_correlator();
  const double gamma_m = bank.channel[0].gamma;
  const ErrorInjectionPlan plan{cfg.injection, cfg.decoherence};
  const int n_states = 4;
  const int n_total = n_states * cfg.n_traj;
  const long total_steps = std::lround(total_time / dt);
  const int n_samples = cfg.chi_samples;

  std::vector<long> sample_step(n_samples);
  result.sample_times.resize(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    sample_step[k] = std::max<long>(1, std::llround(total_steps * double(k + 1) / n_samples));
    result.sample_times[k] = sample_step[k] * dt;
  }

  const int n_chunks = (n_total + kChunk - 1) / kChunk;
  std::vector<ChunkSums> chunks(n_chunks);
  result.records.assign(n_total, {});

  const bool tracing = cfg.dump_traces && !cfg.output_dir.empty();
  if (tracing) {
    std::filesystem::create_directories(std::filesystem::path(cfg.output_dir) / "traces");
  }

  parallel_for(n_chunks, cfg.workers, [&](int chunk) {
    ChunkSums& sums = chunks[chunk];
    sums.decode.assign(n_states, std::vector<DecodeAccumulator>(n_samples));
    const int id_lo = chunk * kChunk;
    const int id_hi = std::min(n_total, id_lo + kChunk);
    for (int id = id_lo; id < id_hi; ++id) {
      const int state_index = id / cfg.n_traj;
      Rng rng(cfg.seed, static_cast<std::uint64_t>(id), /*purpose=*/0);
      EngineHandle engine = make_engine(cfg, bank, plan, dt, state_index);
      CorrelatorState corr(corr_cfg, gamma_m, dt);

      std::ofstream trace;
      if (tracing && id < cfg.max_trace_trajectories) {
        trace.open(std::filesystem::path(cfg.output_dir) / "traces" /
                   ("traj_" + std::to_string(id) + ".csv"));
        trace << "t,I1,I2,I3,I4,subspace,C12,C34,armed,alarmed\n";
        trace.precision(17);
      }

      TrajectoryRecord rec;
      rec.id = id;
      rec.state_index = state_index;
      int next_sample = 0;
      bool alive = true;
      for (long s = 1; s <= total_steps && alive; ++s) {
        const SignalFrame frame = engine.step(rng);
        corr.update(frame);
        if (trace.is_open()) {
          trace << frame.t << ',' << frame.I[0] << ',' << frame.I[1] << ','
                << frame.I[2] << ',' << frame.I[3] << ','
                << subspace_name(engine.subspace_index()) << ','
                << corr.value(0) << ',' << corr.value(1) << ','
                << corr.armed(frame.t) << ',' << bool(corr.first_alarm()) << '\n';
        }
        if (cfg.thresholds_armed && corr.first_alarm()) {
          rec.survived = false;
          rec.alarm_time = corr.first_alarm()->time;
          rec.alarm_pair = corr.first_alarm()->pair;
          alive = false;
          break;
        }
        while (next_sample < n_samples && s == sample_step[next_sample]) {
          sums.decode[state_index][next_sample] += engine.decode();
          ++next_sample;
        }
      }
      rec.final_decode = engine.decode();
      rec.n_jumps = static_cast<int>(engine.jump_log().size());
      rec.jump_summary = summarize_jumps(engine.jump_log());
      result.records[id] = rec;
    }
  });

  // Deterministic reduction in chunk order.
  result.decode_sums.assign(n_states, std::vector<DecodeAccumulator>(n_samples));
  for (const auto& sums : chunks) {
    for (int s = 0; s < n_states; ++s) {
      for (int k = 0; k < n_samples; ++k) {
        result.decode_sums[s][k] += sums.decode[s][k];
      }
    }
  }

  // Survival curves from the per-trajectory alarm times.
  auto alive_at = [&](const TrajectoryRecord& rec, double t) {
    return rec.survived || rec.alarm_time > t;
  };
  result.survival.assign(n_states, std::vector<double>(n_samples, 0.0));
  result.pooled_survival.assign(n_samples, 0.0);
  for (int k = 0; k < n_samples; ++k) {
    const double t = result.sample_times[k];
    for (const auto& rec : result.records) {
      if (alive_at(rec, t)) result.survival[rec.state_index][k] += 1.0;
    }
    double pooled = 0.0;
    for (int s = 0; s < n_states; ++s) {
      pooled += result.survival[s][k];
      result.survival[s][k] /= cfg.n_traj;
    }
    result.pooled_survival[k] = pooled / n_total;
  }

  // Survival-state-independence in binomial sigmas.
  for (int k = 0; k < n_samples; ++k) {
    const double p = result.pooled_survival[k];
    const double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-12) / cfg.n_traj);
    for (int s = 0; s < n_states; ++s) {
      const double dev = std::abs(result.survival[s][k] - p) / sigma;
      result.survival_spread_sigmas = std::max(result.survival_spread_sigmas, dev);
    }
  }

  // Conditional chi(T) from the tomography set; the raw weights keep the
  // state-dependent survival that feeds the off-diagonal elements.
  result.chis.resize(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    std::array<DecodeAccumulator, 4> acc;
    bool ok = true;
    for (int s = 0; s < n_states; ++s) {
      acc[s] = result.decode_sums[s][k];
      ok &= (acc[s].weight > 0.0);
    }
    result.chis[k] = ok ? chi_from_tomography(acc) : ChiMatrix{};
  }

  // Termination fit on a finer survival grid than the tomography samples.
  const int fine_bins = 48;
  std::vector<SurvivalSample> samples;
  for (int b = 0; b < fine_bins; ++b) {
    const double t = total_time * (b + 1) / fine_bins;
    int alive = 0;
    for (const auto& rec : result.records) alive += alive_at(rec, t);
    if (alive <= 0) break;
    samples.push_back({t, static_cast<double>(alive) / n_total,
                       static_cast<double>(n_total)});
  }
  result.term_fit = fit_termination(samples);
  if (n_samples >= 3) {
    result.chi_slopes = fit_chi_slopes(result.sample_times, result.chis);
  }
}

}  // namespace

CampaignResult run_campaign(const ExperimentConfig& config) {
  config.validate_config();
  const auto t0 = std::chrono::steady_clock::now();
  CampaignResult result;
  result.config = config;
  result.workers_used = resolve_workers(config.workers);

  if (config.mode == CampaignMode::Continuous) {
    run_continuous(config, result);
  } else if (config.mode == CampaignMode::Projective) {
    ProjectiveProtocolConfig pc;
    pc.dt = config.proj_dt;
    pc.cycles = config.proj_cycles;
    pc.decoherence = config.decoherence;
    auto run = run_projective_protocol(pc);
    result.sample_times = run.times;
    result.survival.assign(4, {});
    for (int s = 0; s < 4; ++s) result.survival[s] = run.survival[s];
    result.pooled_survival.assign(run.times.size(), 0.0);
    for (std::size_t k = 0; k < run.times.size(); ++k) {
      for (int s = 0; s < 4; ++s) result.pooled_survival[k] += 0.25 * run.survival[s][k];
    }
    result.chis = run.chis;
    result.term_fit.rate = run.fitted_gamma_term;
    result.term_fit.stderr_ = run.fitted_gamma_term_se;
    result.chi_slopes = run.chi_slopes;
    result.survival_spread_sigmas = run.max_survival_spread;
    result.projective = std::move(run);
  }

  // Analytic expectations for this operating point (continuous observables).
  if (config.mode != CampaignMode::Projective) {
    const auto stats =
        analytics::correlator_stats(config.eta, config.resolved_tau_c() / config.tau_m);
    auto p = analytics::predict_rates(
        config.decoherence, stats, config.correlator.kernel,
        analytics::ThresholdPolicy::FixedTheta, config.correlator.T_c / config.tau_m,
        config.correlator.theta);
    // Convert the per-tau_m false-alarm pieces to absolute time units.
    p.gamma_false_alarm /= config.tau_m;
    p.T_R *= config.tau_m;
    p.gamma_term = 2.0 * p.gamma_false_alarm + single_error_rate_sum(config.decoherence);
    const auto lr = analytics::continuous_logical_rates(config.decoherence, p.T_R);
    p.gamma_X = lr.gamma_X;
    p.gamma_Y = lr.gamma_Y;
    p.gamma_Z = lr.gamma_Z;
    p.gamma_L = lr.gamma_L;
    result.prediction = p;
  }

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!config.output_dir.empty()) write_outputs(result, config.output_dir);
  return result;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

json decoherence_to_json(const DecoherenceModel& m) {
  json j;
  std::visit(
      [&](const auto& mm) {
        using T = std::decay_t<decltype(mm)>;
        if constexpr (std::is_same_v<T, MarkovianPauli>) {
          j["kind"] = "markovian";
          j["rates"] = mm.rates;
        } else if constexpr (std::is_same_v<T, Dephasing>) {
          j["kind"] = "dephasing";
          j["gamma_phi"] = mm.gamma_phi;
        } else if constexpr (std::is_same_v<T, Relaxation>) {
          j["kind"] = "relaxation";
          j["mu"] = mm.mu;
        } else {
          j["kind"] = mm.gamma_d == 0.0 ? "none" : "depolarizing";
          j["gamma_d"] = mm.gamma_d;
        }
      },
      m);
  return j;
}

DecoherenceModel decoherence_from_json(const json& j) {
  const std::string kind = j.value("kind", "none");
  if (kind == "none") return Depolarizing{0.0};
  if (kind == "depolarizing") return Depolarizing{j.at("gamma_d").get<double>()};
  if (kind == "dephasing") {
    Dephasing d;
    d.gamma_phi = j.at("gamma_phi").get<std::array<double, 4>>();
    return d;
  }
  if (kind == "relaxation") {
    Relaxation r;
    r.mu = j.at("mu").get<std::array<double, 4>>();
    return r;
  }
  if (kind == "markovian") {
    MarkovianPauli m;
    m.rates = j.at("rates").get<std::array<std::array<double, 3>, 4>>();
    return m;
  }
  throw std::invalid_argument("decoherence.kind: unknown value '" + kind + "'");
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["version"] = c.version;
  j["mode"] = c.mode == CampaignMode::Continuous
                  ? "continuous"
                  : (c.mode == CampaignMode::Projective ? "projective" : "analytics");
  j["seed"] = c.seed;
  j["n_traj"] = c.n_traj;
  j["workers"] = c.workers;
  j["bank"] = {{"tau_m", c.tau_m}, {"eta", c.eta}};
  j["decoherence"] = decoherence_to_json(c.decoherence);
  j["injection"] = c.injection == InjectionMode::LindbladContinuous ? "lindblad" : "jumps";
  j["engine"] = c.engine == EngineKind::Auto
                    ? "auto"
                    : (c.engine == EngineKind::DensityMatrix
                           ? "dm"
                           : (c.engine == EngineKind::PureState ? "pure" : "bloch"));
  j["correlator"] = {
      {"tau_c", c.correlator.tau_c},
      {"kernel", c.correlator.kernel == OuterKernel::Exponential ? "exp" : "rect"},
      {"T_c", c.correlator.T_c},
      {"inner", c.correlator.inner == InnerForm::SymmetrizedProduct ? "symmetrized"
                                                                    : "filtered"},
      {"theta", c.correlator.theta},
      {"mean_reference", c.correlator.mean_reference},
      {"seed_at_mean", c.correlator.seed_at_mean},
      {"arm_time", c.correlator.arm_time}};
  j["thresholds_armed"] = c.thresholds_armed;
  j["dt_step"] = c.dt_step;
  j["total_time"] = c.total_time;
  j["chi_samples"] = c.chi_samples;
  j["projective"] = {{"dt", c.proj_dt}, {"cycles", c.proj_cycles}};
  j["output"] = {{"dir", c.output_dir},
                 {"traces", c.dump_traces},
                 {"max_trace_trajectories", c.max_trace_trajectories}};
  return j;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.version = get_or(j, "version", 1);
  const std::string mode = get_or<std::string>(j, "mode", "continuous");
  if (mode == "continuous") c.mode = CampaignMode::Continuous;
  else if (mode == "projective") c.mode = CampaignMode::Projective;
  else if (mode == "analytics") c.mode = CampaignMode::AnalyticsOnly;
  else throw std::invalid_argument("mode: unknown value '" + mode + "'");
  c.seed = get_or<std::uint64_t>(j, "seed", 1);
  c.n_traj = get_or(j, "n_traj", 10000);
  c.workers = get_or(j, "workers", 0);
  if (j.contains("bank")) {
    c.tau_m = get_or(j.at("bank"), "tau_m", 1.0);
    c.eta = get_or(j.at("bank"), "eta", 1.0);
  }
  if (j.contains("decoherence")) c.decoherence = decoherence_from_json(j.at("decoherence"));
  const std::string inj = get_or<std::string>(j, "injection", "lindblad");
  if (inj == "lindblad") c.injection = InjectionMode::LindbladContinuous;
  else if (inj == "jumps") c.injection = InjectionMode::JumpSampling;
  else throw std::invalid_argument("injection: unknown value '" + inj + "'");
  const std::string eng = get_or<std::string>(j, "engine", "auto");
  if (eng == "auto") c.engine = EngineKind::Auto;
  else if (eng == "dm") c.engine = EngineKind::DensityMatrix;
  else if (eng == "pure") c.engine = EngineKind::PureState;
  else if (eng == "bloch") c.engine = EngineKind::GaugeBloch;
  else throw std::invalid_argument("engine: unknown value '" + eng + "'");
  if (j.contains("correlator")) {
    const json& cj = j.at("correlator");
    c.correlator.tau_c = get_or(cj, "tau_c", 0.0);
    const std::string kern = get_or<std::string>(cj, "kernel", "exp");
    if (kern == "exp") c.correlator.kernel = OuterKernel::Exponential;
    else if (kern == "rect") c.correlator.kernel = OuterKernel::Rectangular;
    else throw std::invalid_argument("correlator.kernel: unknown value '" + kern + "'");
    c.correlator.T_c = get_or(cj, "T_c", 30.0);
    const std::string inner = get_or<std::string>(cj, "inner", "symmetrized");
    if (inner == "symmetrized") c.correlator.inner = InnerForm::SymmetrizedProduct;
    else if (inner == "filtered") c.correlator.inner = InnerForm::FilteredProduct;
    else throw std::invalid_argument("correlator.inner: unknown value '" + inner + "'");
    c.correlator.theta = get_or(cj, "theta", 1.0);
    c.correlator.mean_reference = get_or(cj, "mean_reference", 0.0);
    c.correlator.seed_at_mean = get_or(cj, "seed_at_mean", true);
    c.correlator.arm_time = get_or(cj, "arm_time", 0.0);
  }
  c.thresholds_armed = get_or(j, "thresholds_armed", true);
  c.dt_step = get_or(j, "dt_step", 0.0);
  c.total_time = get_or(j, "total_time", 0.0);
  c.chi_samples = get_or(j, "chi_samples", 16);
  if (j.contains("projective")) {
    c.proj_dt = get_or(j.at("projective"), "dt", 1.0);
    c.proj_cycles = get_or(j.at("projective"), "cycles", 200);
  }
  if (j.contains("output")) {
    c.output_dir = get_or<std::string>(j.at("output"), "dir", "");
    c.dump_traces = get_or(j.at("output"), "traces", false);
    c.max_trace_trajectories = get_or(j.at("output"), "max_trace_trajectories", 4);
  }
  return c;
}

json chi_to_json(const ChiMatrix& chi) {
  json re = json::array(), im = json::array();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      re.push_back(chi.m(r, c).real());
      im.push_back(chi.m(r, c).imag());
    }
  }
  return {{"re", re}, {"im", im}};
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Convert the byte offset into a line number for the diagnostic.
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(text.size(), e.byte); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw std::invalid_argument("config parse error at line " + std::to_string(line) +
                                ": " + e.what());
  }
  ExperimentConfig c = config_from_json(j);
  c.validate_config();
  return c;
}

std::string config_to_json_text(const ExperimentConfig& config) {
  return config_to_json(config).dump(2);
}

std::string result_to_json_text(const CampaignResult& r) {
  json j;
  j["config"] = json::parse(config_to_json_text(r.config));
  j["workers_used"] = r.workers_used;
  j["wall_seconds"] = r.wall_seconds;
  j["sample_times"] = r.sample_times;
  j["survival"] = r.survival;
  j["pooled_survival"] = r.pooled_survival;
  j["survival_spread_sigmas"] = r.survival_spread_sigmas;
  json chis = json::array();
  for (const auto& chi : r.chis) chis.push_back(chi_to_json(chi));
  j["chi"] = chis;
  j["fits"]["gamma_term"] = r.term_fit.rate;
  j["fits"]["gamma_term_se"] = r.term_fit.stderr_;
  j["fits"]["gamma_term_all_surviving"] = r.term_fit.all_surviving;
  {
    json slopes;
    static const char* names = "IXYZ";
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const std::string key{names[a], names[b]};
        slopes[key] = {{"re", r.chi_slopes.slope(a, b).real()},
                       {"im", r.chi_slopes.slope(a, b).imag()},
                       {"se_re", r.chi_slopes.slope_se_real(a, b)},
                       {"se_im", r.chi_slopes.slope_se_imag(a, b)}};
      }
    }
    j["fits"]["chi_slopes"] = slopes;
  }
  j["prediction"] = {{"gamma_false_alarm", r.prediction.gamma_false_alarm},
                     {"T_R", r.prediction.T_R},
                     {"gamma_X", r.prediction.gamma_X},
                     {"gamma_Y", r.prediction.gamma_Y},
                     {"gamma_Z", r.prediction.gamma_Z},
                     {"gamma_L", r.prediction.gamma_L},
                     {"gamma_term", r.prediction.gamma_term},
                     {"correction_factor", r.prediction.correction_factor}};
  if (r.projective) {
    json pr;
    const auto rates = projective_rates(r.config.decoherence, r.config.proj_dt);
    pr["gamma_term"] = rates.gamma_term;
    pr["gamma_X"] = rates.gamma_X;
    pr["gamma_Y"] = rates.gamma_Y;
    pr["gamma_Z"] = rates.gamma_Z;
    pr["gamma_L"] = rates.gamma_L;
    pr["chi_IZ_coefficient"] = rates.chi_IZ_coefficient;
    j["projective_prediction"] = pr;
  }
  return j.dump(2);
}

void write_outputs(const CampaignResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  {
    std::ofstream out(fs::path(dir) / "campaign.json");
    out << result_to_json_text(result) << '\n';
  }
  {
    std::ofstream out(fs::path(dir) / "trajectories.csv");
    out.precision(17);
    out << "id,state,survived,alarm_time,alarm_pair,n_jumps,jumps,weight,"
           "coh_re,coh_im,z_diff\n";
    for (const auto& rec : result.records) {
      out << rec.id << ',' << rec.state_index << ',' << rec.survived << ','
          << rec.alarm_time << ',' << rec.alarm_pair << ',' << rec.n_jumps << ','
          << '"' << rec.jump_summary << '"' << ',' << rec.final_decode.weight
          << ',' << rec.final_decode.coherence.real() << ','
          << rec.final_decode.coherence.imag() << ',' << rec.final_decode.z_diff
          << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

namespace {

void apply_axis(ExperimentConfig& cfg, const std::string& name, double v) {
  if (name == "T_c") cfg.correlator.T_c = v;
  else if (name == "T_R") {
    cfg.correlator.T_c = analytics::outer_time_constant(cfg.correlator.kernel,
                                                        cfg.correlator.theta, v);
  } else if (name == "theta") cfg.correlator.theta = v;
  else if (name == "tau_c") cfg.correlator.tau_c = v;
  else if (name == "eta") cfg.eta = v;
  else if (name == "tau_m") cfg.tau_m = v;
  else if (name == "total_time") cfg.total_time = v;
  else if (name == "n_traj") cfg.n_traj = static_cast<int>(v);
  else if (name == "proj_dt") cfg.proj_dt = v;
  else if (name == "gamma_d") {
    if (!std::holds_alternative<Depolarizing>(cfg.decoherence)) {
      throw std::invalid_argument("axis gamma_d requires a depolarizing model");
    }
    cfg.decoherence = Depolarizing{v};
  } else {
    throw std::invalid_argument("unknown sweep axis '" + name + "'");
  }
}

void push_metric(SweepResult& out, double x, const std::string& name, double v,
                 double se = 0.0) {
  out.rows.push_back({x, name, v, se});
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& base, const SweepAxis& axis) {
  if (axis.values.empty()) throw std::invalid_argument("sweep axis has no values");
  SweepResult out;
  out.axis = axis;
  for (double v : axis.values) {
    ExperimentConfig cfg = base;
    apply_axis(cfg, axis.name, v);
    if (cfg.mode == CampaignMode::AnalyticsOnly) {
      cfg.validate_config();
      const auto stats =
          analytics::correlator_stats(cfg.eta, cfg.resolved_tau_c() / cfg.tau_m);
      const auto p = analytics::predict_rates(
          cfg.decoherence, stats, cfg.correlator.kernel,
          analytics::ThresholdPolicy::FixedTheta, cfg.correlator.T_c / cfg.tau_m,
          cfg.correlator.theta);
      push_metric(out, v, "pred_gamma_false_alarm", p.gamma_false_alarm / cfg.tau_m);
      push_metric(out, v, "pred_T_R", p.T_R * cfg.tau_m);
      push_metric(out, v, "pred_gamma_term",
                  2.0 * p.gamma_false_alarm / cfg.tau_m +
                      single_error_rate_sum(cfg.decoherence));
      const auto lr =
          analytics::continuous_logical_rates(cfg.decoherence, p.T_R * cfg.tau_m);
      push_metric(out, v, "pred_gamma_L", lr.gamma_L);
      if (const auto* dep = std::get_if<Depolarizing>(&cfg.decoherence);
          dep && dep->gamma_d > 0.0) {
        const auto ratios = analytics::comparison_ratios(
            dep->gamma_d, cfg.proj_dt, cfg.tau_m, cfg.eta, cfg.correlator.T_c);
        push_metric(out, v, "logical_ratio", ratios.logical_ratio);
        push_metric(out, v, "termination_ratio", ratios.termination_ratio);
      }
      continue;
    }
    const CampaignResult r = run_campaign(cfg);
    push_metric(out, v, "gamma_term", r.term_fit.rate, r.term_fit.stderr_);
    if (is_trivial(cfg.decoherence)) {
      push_metric(out, v, "gamma_false_alarm", 0.5 * r.term_fit.rate,
                  0.5 * r.term_fit.stderr_);
    }
    push_metric(out, v, "chi_XX_slope", r.chi_slopes.slope(1, 1).real(),
                r.chi_slopes.slope_se_real(1, 1));
    push_metric(out, v, "chi_YY_slope", r.chi_slopes.slope(2, 2).real(),
                r.chi_slopes.slope_se_real(2, 2));
    push_metric(out, v, "chi_ZZ_slope", r.chi_slopes.slope(3, 3).real(),
                r.chi_slopes.slope_se_real(3, 3));
    push_metric(out, v, "chi_IZ_slope_re", r.chi_slopes.slope(0, 3).real(),
                r.chi_slopes.slope_se_real(0, 3));
    push_metric(out, v, "chi_XY_slope_im", r.chi_slopes.slope(1, 2).imag(),
                r.chi_slopes.slope_se_imag(1, 2));
    if (cfg.mode == CampaignMode::Continuous) {
      push_metric(out, v, "pred_gamma_false_alarm", r.prediction.gamma_false_alarm);
      push_metric(out, v, "pred_T_R", r.prediction.T_R);
      push_metric(out, v, "pred_gamma_Z", r.prediction.gamma_Z);
      push_metric(out, v, "pred_gamma_term", r.prediction.gamma_term);
    }
  }
  return out;
}

std::string sweep_to_csv(const SweepResult& sweep) {
  std::ostringstream os;
  os.precision(17);
  os << "axis,axis_value,metric,value,stderr\n";
  for (const auto& row : sweep.rows) {
    os << sweep.axis.name << ',' << row.axis_value << ',' << row.metric << ','
       << row.value << ',' << row.stderr_ << '\n';
  }
  return os.str();
}

std::string sweep_to_plotdata_json(const SweepResult& sweep) {
  // One series per metric, x = axis values.
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> series;
  std::map<std::string, std::vector<double>> errs;
  for (const auto& row : sweep.rows) {
    series[row.metric].first.push_back(row.axis_value);
    series[row.metric].second.push_back(row.value);
    errs[row.metric].push_back(row.stderr_);
  }
  json j;
  j["x_label"] = sweep.axis.name;
  json arr = json::array();
  for (const auto& [name, xy] : series) {
    arr.push_back({{"name", name},
                   {"x", xy.first},
                   {"y", xy.second},
                   {"y_err", errs[name]}});
  }
  j["series"] = arr;
  return j.dump(2);
}

std::string result_to_plotdata_json(const CampaignResult& r) {
  json j;
  j["x_label"] = "T";
  json arr = json::array();
  static const char* state_names[4] = {"z+", "z-", "x+", "y+"};
  for (std::size_t s = 0; s < r.survival.size(); ++s) {
    arr.push_back({{"name", std::string("survival_") + state_names[s]},
                   {"x", r.sample_times},
                   {"y", r.survival[s]}});
  }
  auto chi_series = [&](const char* name, int a, int b, bool imag) {
    std::vector<double> y;
    for (const auto& chi : r.chis) {
      y.push_back(imag ? chi.m(a, b).imag() : chi.m(a, b).real());
    }
    arr.push_back({{"name", name}, {"x", r.sample_times}, {"y", y}});
  };
  chi_series("chi_XX", 1, 1, false);
  chi_series("chi_YY", 2, 2, false);
  chi_series("chi_ZZ", 3, 3, false);
  chi_series("chi_IZ_re", 0, 3, false);
  chi_series("chi_XY_im", 1, 2, true);
  j["series"] = arr;
  return j.dump(2);
}

}  // namespace bslab
