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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bslab/campaign.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bslab::SweepAxis parse_axis(const std::string& spec) {
  // name=start:stop:count  or  name=v1,v2,v3
  const auto eq = spec.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("axis must be name=start:stop:count or name=v1,v2,...");
  }
  bslab::SweepAxis axis;
  axis.name = spec.substr(0, eq);
  const std::string rest = spec.substr(eq + 1);
  if (rest.find(',') != std::string::npos) {
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ',')) axis.values.push_back(std::stod(tok));
  } else {
    double start = 0, stop = 0;
    int count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(rest);
    is >> start >> c1 >> stop >> c2 >> count;
    if (c1 != ':' || c2 != ':' || count < 1) {
      throw std::invalid_argument("axis range must be start:stop:count");
    }
    for (int i = 0; i < count; ++i) {
      axis.values.push_back(count == 1 ? start
                                       : start + (stop - start) * i / (count - 1));
    }
  }
  return axis;
}

nlohmann::json load_campaign_json(const std::string& dir) {
  const auto path = std::filesystem::path(dir) / "campaign.json";
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  return j;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
  auto cfg = bslab::config_from_json_text(read_file(config_path));
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  const auto result = bslab::run_campaign(cfg);
  if (cfg.output_dir.empty()) {
    std::cout << bslab::result_to_json_text(result) << '\n';
  } else {
    std::cout << "campaign written to " << cfg.output_dir << " ("
              << result.records.size() << " trajectories, " << result.wall_seconds
              << " s, " << result.workers_used << " workers)\n";
  }
  return 0;
}

int cmd_analytics(const std::string& config_path) {
  auto cfg = bslab::config_from_json_text(read_file(config_path));
  cfg.mode = bslab::CampaignMode::AnalyticsOnly;
  const auto result = bslab::run_campaign(cfg);
  const auto stats = bslab::analytics::correlator_stats(
      cfg.eta, cfg.resolved_tau_c() / cfg.tau_m);
  nlohmann::json j;
  j["correlator_stats"] = {{"eta", stats.eta},
                           {"tau_c", stats.tau_c},
                           {"tau_c_opt", stats.tau_c_opt},
                           {"mean", stats.mean},
                           {"noise_power", stats.noise_power},
                           {"snr", stats.snr}};
  j["prediction"] = nlohmann::json::parse(bslab::result_to_json_text(result))["prediction"];
  const auto proj = bslab::projective_rates(cfg.decoherence, cfg.proj_dt);
  j["projective_rates"] = {{"gamma_term", proj.gamma_term},
                           {"gamma_X", proj.gamma_X},
                           {"gamma_Y", proj.gamma_Y},
                           {"gamma_Z", proj.gamma_Z},
                           {"gamma_L", proj.gamma_L},
                           {"chi_IZ_coefficient", proj.chi_IZ_coefficient}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis_spec,
              const std::string& out_dir) {
  const auto cfg = bslab::config_from_json_text(read_file(config_path));
  const auto axis = parse_axis(axis_spec);
  const auto sweep = bslab::run_sweep(cfg, axis);
  if (out_dir.empty()) {
    std::cout << bslab::sweep_to_csv(sweep);
  } else {
    std::filesystem::create_directories(out_dir);
    std::ofstream csv(std::filesystem::path(out_dir) / "sweep.csv");
    csv << bslab::sweep_to_csv(sweep);
    std::ofstream plot(std::filesystem::path(out_dir) / "plotdata.json");
    plot << bslab::sweep_to_plotdata_json(sweep) << '\n';
    std::cout << "sweep written to " << out_dir << " (" << sweep.rows.size()
              << " rows)\n";
  }
  return 0;
}

int cmd_fit(const std::string& dir) {
  const auto j = load_campaign_json(dir);
  const auto times = j.at("sample_times").get<std::vector<double>>();
  const auto pooled = j.at("pooled_survival").get<std::vector<double>>();
  const double n = j.at("config").at("n_traj").get<double>() * 4.0;
  std::vector<bslab::SurvivalSample> samples;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (pooled[k] <= 0.0) break;
    samples.push_back({times[k], pooled[k], n});
  }
  // The stored grid is already transient-free; refit without discarding.
  const auto fit = bslab::fit_termination(samples, 0.0);
  nlohmann::json out;
  out["gamma_term"] = fit.rate;
  out["gamma_term_se"] = fit.stderr_;
  out["all_surviving"] = fit.all_surviving;
  out["points_used"] = fit.points_used;
  if (j.contains("fits")) out["stored_fits"] = j.at("fits");
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_plotdata(const std::string& dir) {
  const auto j = load_campaign_json(dir);
  // Re-emit the stored series in plot-ready form.
  nlohmann::json out;
  out["x_label"] = "T";
  nlohmann::json arr = nlohmann::json::array();
  const auto times = j.at("sample_times").get<std::vector<double>>();
  const auto survival = j.at("survival").get<std::vector<std::vector<double>>>();
  static const char* state_names[4] = {"z+", "z-", "x+", "y+"};
  for (std::size_t s = 0; s < survival.size(); ++s) {
    arr.push_back({{"name", std::string("survival_") + state_names[s % 4]},
                   {"x", times},
                   {"y", survival[s]}});
  }
  if (j.contains("chi")) {
    auto series = [&](const char* name, int a, int b, bool imag) {
      std::vector<double> y;
      for (const auto& chi : j.at("chi")) {
        const auto& part = chi.at(imag ? "im" : "re");
        y.push_back(part.at(4 * a + b).get<double>());
      }
      arr.push_back({{"name", name}, {"x", times}, {"y", y}});
    };
    series("chi_XX", 1, 1, false);
    series("chi_YY", 2, 2, false);
    series("chi_ZZ", 3, 3, false);
    series("chi_IZ_re", 0, 3, false);
    series("chi_XY_im", 1, 2, true);
  }
  out["series"] = arr;
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Four-qubit Bacon-Shor code laboratory: continuous gauge-operator "
               "monitoring and the projective baseline"};
  app.require_subcommand(1);

  std::string config_path, out_dir, axis_spec, campaign_dir;

  auto* simulate = app.add_subcommand("simulate", "run a Monte Carlo campaign");
  simulate->add_option("config", config_path, "JSON experiment config")->required();
  simulate->add_option("-o,--out", out_dir, "output directory override");

  auto* analytics_cmd = app.add_subcommand("analytics", "closed-form predictions");
  analytics_cmd->add_option("config", config_path, "JSON experiment config")->required();

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  sweep->add_option("config", config_path, "JSON experiment config")->required();
  sweep->add_option("--axis", axis_spec, "axis, e.g. T_c=10:40:4 or theta=0.5,1.0")
      ->required();
  sweep->add_option("-o,--out", out_dir, "output directory (sweep.csv, plotdata.json)");

  auto* fit = app.add_subcommand("fit", "refit a stored campaign");
  fit->add_option("dir", campaign_dir, "campaign output directory")->required();

  auto* plotdata = app.add_subcommand("plotdata", "emit plot-ready series");
  plotdata->add_option("dir", campaign_dir, "campaign output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (simulate->parsed()) return cmd_simulate(config_path, out_dir);
    if (analytics_cmd->parsed()) return cmd_analytics(config_path);
    if (sweep->parsed()) return cmd_sweep(config_path, axis_spec, out_dir);
    if (fit->parsed()) return cmd_fit(campaign_dir);
    if (plotdata->parsed()) return cmd_plotdata(campaign_dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumericalError;
  }
  return 0;
}
