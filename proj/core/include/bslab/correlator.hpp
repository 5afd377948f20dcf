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
#include <vector>

#include "bslab/detector.hpp"

namespace bslab {

enum class OuterKernel : std::uint8_t { Rectangular, Exponential };
enum class InnerForm : std::uint8_t { SymmetrizedProduct, FilteredProduct };

/// Construction of the monitored time-integrated cross-correlators.
struct CorrelatorConfig {
  double tau_c = 0.342;  // inner exponential time constant
  OuterKernel kernel = OuterKernel::Exponential;
  double T_c = 30.0;  // outer window / time constant
  InnerForm inner = InnerForm::SymmetrizedProduct;
  double theta = 1.0;          // alarm when C < (1 - theta) * mean_reference
  double mean_reference = 0.0;  // 0: analytic 1 / (1 + 2 Gamma_m tau_c)
  bool seed_at_mean = true;     // else zero-init and arm after arm_time
  double arm_time = 0.0;        // 0: 5 T_c when zero-initialized

  /// Throws on invalid parameters; returns human-readable warnings.
  std::vector<std::string> validate() const;
};

/// Running mean of the gauge-operator correlator in the code space,
/// 1 / (1 + 2 Gamma_m tau_c).
double correlator_mean(double gamma_m, double tau_c);

struct Alarm {
  double time = 0.0;
  int pair = 0;  // 0: channels (1,2); 1: channels (3,4)
};

/// Streaming state of both monitored channel pairs.
class CorrelatorState {
public:
  CorrelatorState(const CorrelatorConfig& config, double gamma_m, double dt);

  /// Consume one frame; updates C_12 and C_34.
  void update(const SignalFrame& frame);

  double value(int pair) const { return pair_[pair].C; }
  double inner_value(int pair) const { return pair_[pair].c_tilde; }
  bool armed(double t) const { return t >= arm_time_; }
  double threshold() const { return threshold_; }
  double mean_reference() const { return mean_ref_; }

  /// First threshold crossing at or before the last consumed frame.
  const std::optional<Alarm>& first_alarm() const { return first_alarm_; }
  void reset_alarm() { first_alarm_.reset(); }

private:
  struct PairState {
    double f_a = 0.0, f_b = 0.0;  // inner exponential filters
    double c_tilde = 0.0;
    double C = 0.0;
    // rectangular kernel: sliding trapezoid over W+1 samples
    std::vector<double> ring;
    std::size_t head = 0;
    double running = 0.0;
  };

  void update_pair(PairState& p, double ia, double ib, double t, int index);

  CorrelatorConfig cfg_;
  double dt_ = 0.0;
  double lambda_inner_ = 0.0;
  double lambda_outer_ = 0.0;
  double mean_ref_ = 0.0;
  double threshold_ = 0.0;
  double arm_time_ = 0.0;
  std::size_t window_ = 0;
  PairState pair_[2];
  std::optional<Alarm> first_alarm_;
};

}  // namespace bslab
