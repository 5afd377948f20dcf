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

#include "bslab/correlator.hpp"

#include <cmath>
#include <stdexcept>

namespace bslab {

double correlator_mean(double gamma_m, double tau_c) {
  return 1.0 / (1.0 + 2.0 * gamma_m * tau_c);
}

std::vector<std::string> CorrelatorConfig::validate() const {
  if (tau_c <= 0.0) throw std::invalid_argument("tau_c must be > 0");
  if (T_c < 5.0 * tau_c) {
    throw std::invalid_argument("outer time constant must satisfy T_c >= 5 tau_c");
  }
  if (theta <= 0.0 || theta >= 2.0) {
    throw std::invalid_argument("threshold parameter must be in (0, 2)");
  }
  std::vector<std::string> warnings;
  if (T_c < 20.0 * tau_c) {
    warnings.push_back("T_c < 20 tau_c: the white-noise approximation of the "
                       "inner correlator degrades");
  }
  return warnings;
}

CorrelatorState::CorrelatorState(const CorrelatorConfig& config, double gamma_m,
                                 double dt)
    : cfg_(config), dt_(dt) {
  cfg_.validate();
  if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
  lambda_inner_ = std::exp(-dt / cfg_.tau_c);
  lambda_outer_ = std::exp(-dt / cfg_.T_c);
  mean_ref_ = (cfg_.mean_reference != 0.0) ? cfg_.mean_reference
                                           : correlator_mean(gamma_m, cfg_.tau_c);
  threshold_ = (1.0 - cfg_.theta) * mean_ref_;
  window_ = static_cast<std::size_t>(std::lround(cfg_.T_c / dt));
  if (window_ < 2) throw std::invalid_argument("T_c must span >= 2 steps");

  const double init = cfg_.seed_at_mean ? mean_ref_ : 0.0;
  arm_time_ = cfg_.seed_at_mean
                  ? cfg_.arm_time
                  : (cfg_.arm_time > 0.0 ? cfg_.arm_time : 5.0 * cfg_.T_c);
  for (auto& p : pair_) {
    p.C = init;
    p.c_tilde = init;
    if (cfg_.kernel == OuterKernel::Rectangular) {
      p.ring.assign(window_ + 1, init);
      p.running = init * static_cast<double>(window_);
    }
  }
}

void CorrelatorState::update_pair(PairState& p, double ia, double ib, double t,
                                  int index) {
  // Inner exponential filter includes the current frame; the same-frame
  // product carries the tau_m/dt singular variance of the continuum limit.
  const double gain = 1.0 - lambda_inner_;
  p.f_a = lambda_inner_ * p.f_a + gain * ia;
  p.f_b = lambda_inner_ * p.f_b + gain * ib;
  if (cfg_.inner == InnerForm::SymmetrizedProduct) {
    p.c_tilde = 0.5 * (ia * p.f_b + ib * p.f_a);
  } else {
    p.c_tilde = p.f_a * p.f_b;
  }

  if (cfg_.kernel == OuterKernel::Exponential) {
    p.C = lambda_outer_ * p.C + (1.0 - lambda_outer_) * p.c_tilde;
  } else {
    // Sliding trapezoid over the last `window_` steps (window_ + 1 samples,
    // half weight at both ends).
    const std::size_t n = p.ring.size();
    const double newest = p.ring[p.head];
    const std::size_t write = (p.head + 1) % n;
    const double oldest = p.ring[write];
    const double second_oldest = p.ring[(write + 1) % n];
    p.running += 0.5 * (p.c_tilde + newest) - 0.5 * (oldest + second_oldest);
    p.ring[write] = p.c_tilde;
    p.head = write;
    p.C = p.running / static_cast<double>(window_);
  }

  if (!first_alarm_ && t >= arm_time_ && p.C < threshold_) {
    first_alarm_ = Alarm{t, index};
  }
}

void CorrelatorState::update(const SignalFrame& frame) {
  update_pair(pair_[0], frame.I[0], frame.I[1], frame.t, 0);
  update_pair(pair_[1], frame.I[2], frame.I[3], frame.t, 1);
}

}  // namespace bslab
