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

#include <array>
#include <cmath>
#include <stdexcept>

namespace bslab {

/// Continuous-measurement parameters of one detector channel.
struct DetectorChannel {
  double tau = 1.0;    // measurement (collapse) time
  double gamma = 0.5;  // ensemble dephasing between the +-1 eigenspaces
  double K = 0.0;      // output-proportional phase back-action
  double eps = 0.0;    // constant energy shift between the eigenspaces

  double eta() const { return 1.0 / (2.0 * gamma * tau); }
  double eta_tilde() const {
    return (1.0 + K * K * tau * tau) / (2.0 * gamma * tau);
  }
  /// Dephasing beyond the informational and phase-back-action parts.
  double gamma_excess() const {
    return gamma - 1.0 / (2.0 * tau) - K * K * tau / 2.0;
  }
};

/// Per-channel parameters for the four gauge-operator detectors
/// (channels 0..3 measure X1X2, X3X4, Z1Z3, Z2Z4).
struct DetectorBank {
  std::array<DetectorChannel, 4> channel;

  /// Equal strength, no phase back-action: Gamma = 1 / (2 eta tau_m).
  static DetectorBank uniform(double tau_m, double eta = 1.0) {
    if (tau_m <= 0.0 || eta <= 0.0 || eta > 1.0) {
      throw std::invalid_argument("uniform bank: need tau_m > 0, 0 < eta <= 1");
    }
    DetectorBank bank;
    for (auto& c : bank.channel) {
      c.tau = tau_m;
      c.gamma = 1.0 / (2.0 * eta * tau_m);
      c.K = 0.0;
      c.eps = 0.0;
    }
    return bank;
  }

  void validate() const {
    for (const auto& c : channel) {
      if (c.tau <= 0.0) throw std::invalid_argument("detector tau must be > 0");
      if (c.gamma_excess() < -1e-12) {
        throw std::invalid_argument(
            "detector violates Gamma >= 1/(2 tau) + K^2 tau / 2");
      }
    }
  }

  bool ideal() const {
    for (const auto& c : channel) {
      if (std::abs(c.eta_tilde() - 1.0) > 1e-12) return false;
    }
    return true;
  }

  double min_tau() const {
    double m = channel[0].tau;
    for (const auto& c : channel) m = std::min(m, c.tau);
    return m;
  }
};

/// One step of the four detector outputs, averaged over dt.
struct SignalFrame {
  double t = 0.0;
  std::array<double, 4> I{};
};

}  // namespace bslab
