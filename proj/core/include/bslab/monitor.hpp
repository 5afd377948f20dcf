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

#include "bslab/correlator.hpp"
#include "bslab/fitting.hpp"
#include "bslab/gauge_bloch.hpp"

namespace bslab {

struct FalseAlarmResult {
  double rate_per_pair = 0.0;  // total crossing rate / 2
  double ci_half_width = 0.0;  // ~95%
  int alarms = 0;
  int n_traj = 0;
  bool wide_ci_warning = false;  // fewer than 10 alarms
  TerminationFit fit;            // of the no-alarm fraction (total rate)
};

/**
 * Monte Carlo first-passage rate of threshold crossings with the state held
 * in the code space and no decoherence. The per-pair rate is half the
 * fitted decay rate of the no-alarm fraction.
 */
FalseAlarmResult measure_false_alarm_rate(const CorrelatorConfig& config,
                                          const DetectorBank& bank, int n_traj,
                                          double duration, std::uint64_t seed,
                                          double dt_step, int workers = 0);

struct ResponseTimeResult {
  double mean_delay = 0.0;
  double ci_half_width = 0.0;  // ~95% of the mean
  int detected = 0;
  int n_traj = 0;
};

/**
 * Mean first-crossing delay after a single injected error. Trajectories are
 * settled in the code space before injection; trajectories that false-alarm
 * before injection are discarded.
 */
ResponseTimeResult measure_response_time(const CorrelatorConfig& config,
                                         const DetectorBank& bank,
                                         const PauliString& error, int n_traj,
                                         std::uint64_t seed, double dt_step,
                                         int workers = 0);

}  // namespace bslab
