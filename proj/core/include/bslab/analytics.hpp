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
#include "bslab/decoherence.hpp"

namespace bslab {
namespace analytics {

// All quantities are in units of the collapse time tau_m = 1, with
// Gamma_m = 1 / (2 eta).

/// Inner time constant maximizing the correlator signal-to-noise ratio;
/// root of 8 eta s^3 (s+2) + 4 s^2 (1+s)^2 + (s^4 + 2s^3 - 2s - 1)/eta = 0
/// with s = 2 Gamma_m tau_c, bisected to 1e-10.
double optimal_tau_c(double eta);

struct CorrelatorStats {
  double eta = 1.0;
  double gamma_m = 0.5;      // 1 / (2 eta)
  double tau_c = 0.342;
  double mean = 0.745;        // <C~> = 1 / (1 + 2 Gamma_m tau_c)
  double noise_power = 2.13;  // A^2, low-frequency noise power of C~
  double snr = 0.261;         // mean^2 / A^2
  double tau_c_opt = 0.342;
};

CorrelatorStats correlator_stats(double eta);  // at tau_c = tau_c_opt
CorrelatorStats correlator_stats(double eta, double tau_c);

/// Mean threshold-crossing delay after a correlator sign flip:
/// theta T_c / 2 (rectangular), T_c ln[2/(2-theta)] (exponential).
double response_time(OuterKernel kernel, double theta, double T_c);
/// Inverse of response_time in T_c.
double outer_time_constant(OuterKernel kernel, double theta, double T_R);

enum class ThresholdPolicy : std::uint8_t {
  FixedTheta,    // caller-supplied theta
  OptimalTheta,  // exponential kernel, theta = 1.43
  ShiftedRect,   // rectangular, theta = 2 - 2 sqrt(D_c)/<C>
};

constexpr double kOptimalThetaExp = 1.43;

/// Third cumulant of the integrated correlator at tau_c = tau_c_opt and
/// eta = 1: 1.05/(Gamma_m T_c)^2 (rect), 0.34/(Gamma_m T_c)^2 (exp).
double third_cumulant(OuterKernel kernel, double gamma_m, double T_c);

/// Non-Gaussian exponent multiplier 1 + <C> kappa_3 / (3 kappa_2^2);
/// independent of T_c (1.23 rect / 1.30 exp at eta = 1, tau_c_opt).
double exponent_correction_factor(OuterKernel kernel, const CorrelatorStats& s);

/**
 * First-passage false-alarm rate of one monitored correlator, per unit
 * tau_m. `theta` is ignored for the OptimalTheta and ShiftedRect policies.
 * With `corrected`, the non-Gaussian exponent correction is applied.
 */
double false_alarm_rate(OuterKernel kernel, ThresholdPolicy policy,
                        const CorrelatorStats& stats, double T_c,
                        double theta = 1.0, bool corrected = false);

/// Same rate parameterized by the response time (the paper-facing form).
double false_alarm_rate_at_response(OuterKernel kernel, ThresholdPolicy policy,
                                    const CorrelatorStats& stats, double T_R,
                                    double theta = 1.0, bool corrected = false);

/// Response time at which the false-alarm rate reaches `target`;
/// monotone bisection on T_R in [tau_m, 1e3 tau_m].
double response_time_for_rate(OuterKernel kernel, ThresholdPolicy policy,
                              const CorrelatorStats& stats, double target,
                              double theta = 1.0, bool corrected = false);

struct LogicalRates {
  double gamma_X = 0.0, gamma_Y = 0.0, gamma_Z = 0.0, gamma_L = 0.0;
};

/// Two-error logical rates under continuous monitoring with response time
/// T_R (same time units as the rates in `model`).
LogicalRates continuous_logical_rates(const DecoherenceModel& model, double T_R);

/// Everything the monitor predicts for one operating point.
struct RatePrediction {
  double gamma_false_alarm = 0.0;  // per pair
  double T_R = 0.0;
  double gamma_X = 0.0, gamma_Y = 0.0, gamma_Z = 0.0, gamma_L = 0.0;
  double gamma_term = 0.0;  // 2 gamma_f.al. + single-error rate sum
  double correction_factor = 1.0;
};

/// `model` rates are per tau_m here so gamma_term composes consistently.
RatePrediction predict_rates(const DecoherenceModel& model,
                             const CorrelatorStats& stats, OuterKernel kernel,
                             ThresholdPolicy policy, double T_c,
                             double theta = 1.0, bool corrected = false);

struct ComparisonRatios {
  double logical_ratio = 0.0;      // continuous / projective
  double termination_ratio = 0.0;  // continuous / projective
};

/// Depolarizing-channel comparison of continuous operation (exponential
/// kernel, symmetric threshold) against the two-step projective protocol
/// with half-cycle dt. All times in the same units.
ComparisonRatios comparison_ratios(double gamma_d, double dt, double tau_m,
                                   double eta, double T_c_e);

}  // namespace analytics
}  // namespace bslab
