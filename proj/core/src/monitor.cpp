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

#include "bslab/monitor.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bslab/parallel.hpp"

namespace bslab {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BSLAB_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::min(resolve_workers(workers), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const int i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) break;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          break;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed && error) std::rethrow_exception(error);
}

FalseAlarmResult measure_false_alarm_rate(const CorrelatorConfig& config,
                                          const DetectorBank& bank, int n_traj,
                                          double duration, std::uint64_t seed,
                                          double dt_step, int workers) {
  if (n_traj < 1 || duration <= 0.0) {
    throw std::invalid_argument("need n_traj >= 1 and duration > 0");
  }
  const ErrorInjectionPlan no_errors{InjectionMode::JumpSampling,
                                     Depolarizing{0.0}};
  const double gamma_m = bank.channel[0].gamma;
  std::vector<double> alarm_time(n_traj, -1.0);

  parallel_for(n_traj, workers, [&](int i) {
    Rng rng(seed, static_cast<std::uint64_t>(i), /*purpose=*/1);
    GaugeBlochTrajectory traj(bank, no_errors, dt_step);
    CorrelatorState corr(config, gamma_m, dt_step);
    const long steps = std::lround(duration / dt_step);
    for (long s = 0; s < steps; ++s) {
      corr.update(traj.step(rng));
      if (corr.first_alarm()) {
        alarm_time[i] = corr.first_alarm()->time;
        break;
      }
    }
  });

  // Survival curve of the no-alarm fraction on a uniform grid.
  const int bins = 64;
  std::vector<SurvivalSample> samples(bins);
  int alarms = 0;
  for (double t : alarm_time) alarms += (t >= 0.0);
  for (int b = 0; b < bins; ++b) {
    const double t = duration * (b + 1) / bins;
    int alive = 0;
    for (double ta : alarm_time) alive += (ta < 0.0 || ta > t);
    samples[b] = {t, static_cast<double>(alive) / n_traj,
                  static_cast<double>(n_traj)};
  }

  FalseAlarmResult out;
  out.n_traj = n_traj;
  out.alarms = alarms;
  out.wide_ci_warning = alarms < 10;
  out.fit = fit_termination(samples, /*discard_fraction=*/0.0);
  out.rate_per_pair = 0.5 * out.fit.rate;
  if (out.fit.all_surviving) {
    out.ci_half_width = 0.5 * out.fit.stderr_;  // one-sided bound
  } else {
    // Poisson-dominated uncertainty on the event count.
    const double count_rel = (alarms > 0) ? 1.96 / std::sqrt(alarms) : 1.0;
    out.ci_half_width =
        std::max(0.5 * 1.96 * out.fit.stderr_, out.rate_per_pair * count_rel);
  }
  return out;
}

ResponseTimeResult measure_response_time(const CorrelatorConfig& config,
                                         const DetectorBank& bank,
                                         const PauliString& error, int n_traj,
                                         std::uint64_t seed, double dt_step,
                                         int workers) {
  if (error.weight() != 1) {
    throw std::invalid_argument("response time probe expects a weight-1 error");
  }
  const ErrorInjectionPlan no_errors{InjectionMode::JumpSampling,
                                     Depolarizing{0.0}};
  const double gamma_m = bank.channel[0].gamma;
  const double settle = 6.0 * config.T_c;
  const double cap = 40.0 * config.T_c;
  std::vector<double> delay(n_traj, -1.0);

  parallel_for(n_traj, workers, [&](int i) {
    Rng rng(seed, static_cast<std::uint64_t>(i), /*purpose=*/2);
    GaugeBlochTrajectory traj(bank, no_errors, dt_step);
    CorrelatorState corr(config, gamma_m, dt_step);
    const long settle_steps = std::lround(settle / dt_step);
    for (long s = 0; s < settle_steps; ++s) {
      corr.update(traj.step(rng));
      if (corr.first_alarm()) return;  // false alarm: discard the trial
    }
    const double t_inject = traj.time();
    traj.apply_error(error);
    const long cap_steps = std::lround(cap / dt_step);
    for (long s = 0; s < cap_steps; ++s) {
      corr.update(traj.step(rng));
      if (corr.first_alarm()) {
        delay[i] = corr.first_alarm()->time - t_inject;
        return;
      }
    }
  });

  ResponseTimeResult out;
  out.n_traj = n_traj;
  double sum = 0.0, sum2 = 0.0;
  for (double d : delay) {
    if (d < 0.0) continue;
    ++out.detected;
    sum += d;
    sum2 += d * d;
  }
  if (out.detected > 1) {
    out.mean_delay = sum / out.detected;
    const double var =
        (sum2 - sum * sum / out.detected) / (out.detected - 1);
    out.ci_half_width = 1.96 * std::sqrt(var / out.detected);
  }
  return out;
}

}  // namespace bslab
