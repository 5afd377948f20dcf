#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <bslab/campaign.hpp>

using namespace bslab;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.mode = CampaignMode::Continuous;
  cfg.seed = 12345;
  cfg.n_traj = 100;
  cfg.injection = InjectionMode::JumpSampling;
  cfg.correlator.T_c = 20.0;
  cfg.total_time = 150.0;
  cfg.chi_samples = 6;
  return cfg;
}

}  // namespace

TEST_CASE("aggregates are bit-identical across worker counts") {
  ExperimentConfig cfg = small_config();
  std::string ref;
  for (int workers : {1, 2, 3}) {
    cfg.workers = workers;
    const auto result = run_campaign(cfg);
    CampaignResult normalized = result;
    normalized.wall_seconds = 0.0;
    normalized.workers_used = 0;
    normalized.config.workers = 0;
    const std::string text = result_to_json_text(normalized);
    if (ref.empty()) {
      ref = text;
    } else {
      CHECK(text == ref);
    }
  }
}

TEST_CASE("disarmed campaign without decoherence is the identity process") {
  ExperimentConfig cfg = small_config();
  cfg.thresholds_armed = false;
  cfg.n_traj = 200;
  const auto result = run_campaign(cfg);
  for (double p : result.pooled_survival) CHECK(p == 1.0);
  const auto& chi = result.chis.back();
  CHECK(chi(0, 0).real() == doctest::Approx(1.0).epsilon(3.0 / std::sqrt(200.0)));
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (a == 0 && b == 0) continue;
      CHECK(std::abs(chi(a, b)) < 3.0 / std::sqrt(200.0));
    }
  }
  CHECK(result.term_fit.all_surviving);
}

TEST_CASE("dephasing campaign terminates at the predicted rate") {
  ExperimentConfig cfg = small_config();
  cfg.n_traj = 400;
  Dephasing d;
  d.gamma_phi = {4e-3, 4e-3, 0.0, 0.0};  // termination 4e-3 per tau_m
  cfg.decoherence = d;
  cfg.total_time = 400.0;
  cfg.correlator.T_c = 15.0;
  cfg.chi_samples = 10;
  const auto result = run_campaign(cfg);
  CHECK(result.term_fit.rate / result.prediction.gamma_term ==
        doctest::Approx(1.0).epsilon(0.15));
  CHECK(result.survival_spread_sigmas < 4.0);
  for (const auto& chi : result.chis) {
    CHECK(chi.trace() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(chi.is_hermitian());
  }
}

TEST_CASE("config json round trip and validation diagnostics") {
  ExperimentConfig cfg = small_config();
  cfg.eta = 0.8;
  cfg.engine = EngineKind::DensityMatrix;
  Relaxation rel;
  rel.mu = {1e-3, 0, 0, 2e-3};
  cfg.decoherence = rel;
  const std::string text = config_to_json_text(cfg);
  const ExperimentConfig back = config_from_json_text(text);
  CHECK(back.eta == cfg.eta);
  CHECK(back.engine == EngineKind::DensityMatrix);
  CHECK(std::get<Relaxation>(back.decoherence).mu[3] == 2e-3);
  CHECK(config_to_json_text(back) == text);

  CHECK_THROWS_WITH_AS(config_from_json_text("{\"mode\": \"nonsense\"}"),
                       doctest::Contains("mode"), std::invalid_argument);
  // Parse errors carry a line number.
  CHECK_THROWS_WITH_AS(config_from_json_text("{\n  \"mode\": oops\n}"),
                       doctest::Contains("line 2"), std::invalid_argument);
  ExperimentConfig bad = small_config();
  bad.n_traj = 0;
  CHECK_THROWS_WITH_AS(run_campaign(bad), doctest::Contains("n_traj"),
                       std::invalid_argument);
  ExperimentConfig bad2 = small_config();
  bad2.engine = EngineKind::GaugeBloch;
  bad2.decoherence = Relaxation{{1e-3, 0, 0, 0}};
  CHECK_THROWS_AS(run_campaign(bad2), std::invalid_argument);
}

TEST_CASE("campaign outputs land on disk with the config echoed") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "bslab_test_campaign";
  fs::remove_all(dir);
  ExperimentConfig cfg = small_config();
  cfg.n_traj = 50;
  cfg.output_dir = dir.string();
  cfg.dump_traces = true;
  cfg.max_trace_trajectories = 2;
  const auto result = run_campaign(cfg);
  CHECK(fs::exists(dir / "campaign.json"));
  CHECK(fs::exists(dir / "trajectories.csv"));
  CHECK(fs::exists(dir / "traces" / "traj_0.csv"));
  CHECK(fs::exists(dir / "traces" / "traj_1.csv"));
  CHECK(!fs::exists(dir / "traces" / "traj_2.csv"));
  std::ifstream in(dir / "campaign.json");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("\"seed\": 12345") != std::string::npos);
  CHECK(result.records.size() == 200);
  // Trace files carry the signal and correlator columns.
  std::ifstream trace(dir / "traces" / "traj_0.csv");
  std::string header;
  std::getline(trace, header);
  CHECK(header == "t,I1,I2,I3,I4,subspace,C12,C34,armed,alarmed");
  fs::remove_all(dir);
}

TEST_CASE("projective campaign mode wraps the deterministic protocol") {
  ExperimentConfig cfg;
  cfg.mode = CampaignMode::Projective;
  cfg.proj_dt = 1.0;
  cfg.proj_cycles = 60;
  Dephasing d;
  d.gamma_phi = {1e-3, 1e-3, 1e-3, 1e-3};
  cfg.decoherence = d;
  const auto result = run_campaign(cfg);
  REQUIRE(result.projective.has_value());
  CHECK(result.term_fit.rate == doctest::Approx(2e-3).epsilon(0.02));
  CHECK(result.sample_times.size() == 60);
}

TEST_CASE("single-point sweep equals the direct campaign") {
  ExperimentConfig cfg = small_config();
  cfg.n_traj = 60;
  SweepAxis axis{"T_c", {20.0}};
  const auto sweep = run_sweep(cfg, axis);
  const auto direct = run_campaign(cfg);
  double swept_gamma = -1.0;
  for (const auto& row : sweep.rows) {
    if (row.metric == "gamma_term") swept_gamma = row.value;
  }
  CHECK(swept_gamma == direct.term_fit.rate);
  const std::string csv = sweep_to_csv(sweep);
  CHECK(csv.find("axis,axis_value,metric,value,stderr") == 0);
  CHECK(csv.find("gamma_term") != std::string::npos);
}

TEST_CASE("analytics-only sweep emits the trade-off curve family") {
  // Termination-rate ratio versus integration time for several detector
  // collapse times: each curve decreases monotonically to 1.
  for (double tau_m : {1.0, 0.3, 0.1, 0.03}) {
    ExperimentConfig cfg;
    cfg.mode = CampaignMode::AnalyticsOnly;
    cfg.decoherence = Depolarizing{1e-4};
    cfg.tau_m = tau_m;
    cfg.proj_dt = 1.0;
    cfg.correlator.tau_c = 0.0;  // optimal
    SweepAxis axis{"T_c", {}};
    for (double t = 5.0; t <= 60.0; t += 5.0) {
      axis.values.push_back(t * tau_m);  // T_c spans [5, 60] collapse times
    }
    const auto sweep = run_sweep(cfg, axis);
    std::vector<double> term_ratio, logical_ratio;
    for (const auto& row : sweep.rows) {
      if (row.metric == "termination_ratio") term_ratio.push_back(row.value);
      if (row.metric == "logical_ratio") logical_ratio.push_back(row.value);
    }
    REQUIRE(term_ratio.size() == axis.values.size());
    for (std::size_t i = 1; i < term_ratio.size(); ++i) {
      CHECK(term_ratio[i] <= term_ratio[i - 1]);
      CHECK(term_ratio[i] >= 1.0);
      CHECK(logical_ratio[i] > logical_ratio[i - 1]);  // linear in T_c
    }
  }
}
