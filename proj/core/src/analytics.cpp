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

#include "bslab/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace bslab {
namespace analytics {

namespace {

double optimality_residual(double s, double eta) {
  return 8.0 * eta * s * s * s * (s + 2.0) +
         4.0 * s * s * (1.0 + s) * (1.0 + s) +
         (s * s * s * s + 2.0 * s * s * s - 2.0 * s - 1.0) / eta;
}

}  // namespace

double optimal_tau_c(double eta) {
  if (eta <= 0.0 || eta > 1.0) throw std::invalid_argument("eta must be in (0, 1]");
  double lo = 1e-9, hi = 4.0;
  if (optimality_residual(lo, eta) >= 0.0 || optimality_residual(hi, eta) <= 0.0) {
    throw std::runtime_error("optimal_tau_c: no sign change in bracket");
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (optimality_residual(mid, eta) < 0.0 ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);
  const double gamma_m = 1.0 / (2.0 * eta);
  return s / (2.0 * gamma_m);  // = s * eta in tau_m units
}

CorrelatorStats correlator_stats(double eta) {
  return correlator_stats(eta, optimal_tau_c(eta));
}

CorrelatorStats correlator_stats(double eta, double tau_c) {
  if (eta <= 0.0 || eta > 1.0) throw std::invalid_argument("eta must be in (0, 1]");
  if (tau_c <= 0.0) throw std::invalid_argument("tau_c must be > 0");
  CorrelatorStats st;
  st.eta = eta;
  st.gamma_m = 1.0 / (2.0 * eta);
  st.tau_c = tau_c;
  st.tau_c_opt = optimal_tau_c(eta);
  const double s = 2.0 * st.gamma_m * tau_c;
  st.mean = 1.0 / (1.0 + s);
  st.noise_power = 1.0 / (4.0 * tau_c) +
                   2.0 * (1.0 + st.gamma_m * tau_c) / ((1.0 + s) * (1.0 + s)) +
                   4.0 * st.gamma_m * tau_c * tau_c / ((1.0 + s) * (1.0 + s) * (1.0 + s));
  st.snr = st.mean * st.mean / st.noise_power;
  return st;
}

double response_time(OuterKernel kernel, double theta, double T_c) {
  if (theta <= 0.0 || theta >= 2.0) throw std::invalid_argument("theta in (0, 2)");
  if (kernel == OuterKernel::Rectangular) return 0.5 * theta * T_c;
  return T_c * std::log(2.0 / (2.0 - theta));
}

double outer_time_constant(OuterKernel kernel, double theta, double T_R) {
  if (theta <= 0.0 || theta >= 2.0) throw std::invalid_argument("theta in (0, 2)");
  if (kernel == OuterKernel::Rectangular) return 2.0 * T_R / theta;
  return T_R / std::log(2.0 / (2.0 - theta));
}

double third_cumulant(OuterKernel kernel, double gamma_m, double T_c) {
  const double g = gamma_m * T_c;
  return (kernel == OuterKernel::Rectangular ? 1.05 : 0.34) / (g * g);
}

double exponent_correction_factor(OuterKernel kernel, const CorrelatorStats& s) {
  // kappa_3 / kappa_2^2 is independent of T_c for both kernels.
  const double a4 = s.noise_power * s.noise_power;
  const double k3_over_k2sq =
      (kernel == OuterKernel::Rectangular ? 1.05 : 4.0 * 0.34) /
      (s.gamma_m * s.gamma_m * a4);
  return 1.0 + s.mean * k3_over_k2sq / 3.0;
}

double false_alarm_rate(OuterKernel kernel, ThresholdPolicy policy,
                        const CorrelatorStats& stats, double T_c, double theta,
                        bool corrected) {
  const double mean = stats.mean, a = std::sqrt(stats.noise_power);
  const double corr = corrected ? exponent_correction_factor(kernel, stats) : 1.0;
  switch (policy) {
    case ThresholdPolicy::OptimalTheta:
      if (kernel != OuterKernel::Exponential) {
        throw std::invalid_argument("optimal-theta policy applies to the exponential kernel");
      }
      theta = kOptimalThetaExp;
      break;
    case ThresholdPolicy::ShiftedRect: {
      if (kernel != OuterKernel::Rectangular) {
        throw std::invalid_argument("shifted policy applies to the rectangular kernel");
      }
      const double sd = a / std::sqrt(T_c);
      theta = 2.0 - 2.0 * sd / mean;
      if (theta <= 0.0) throw std::invalid_argument("T_c too short for the shifted threshold");
      break;
    }
    case ThresholdPolicy::FixedTheta:
      break;
  }
  if (theta <= 0.0 || theta >= 2.0) throw std::invalid_argument("theta in (0, 2)");
  if (kernel == OuterKernel::Exponential) {
    const double expo = theta * theta * mean * mean * T_c / stats.noise_power;
    return theta * mean / (a * std::sqrt(M_PI * T_c)) * std::exp(-expo * corr);
  }
  const double expo = theta * theta * mean * mean * T_c / (2.0 * stats.noise_power);
  return theta * mean / (a * std::sqrt(2.0 * M_PI * T_c)) * std::exp(-expo * corr);
}

double false_alarm_rate_at_response(OuterKernel kernel, ThresholdPolicy policy,
                                    const CorrelatorStats& stats, double T_R,
                                    double theta, bool corrected) {
  const double mean = stats.mean, a = std::sqrt(stats.noise_power);
  if (policy == ThresholdPolicy::ShiftedRect) {
    // Threshold two standard deviations short of full flip; expansion in
    // sqrt(D_c)/<C> gives the closed form below.
    const double corr = corrected
                            ? exponent_correction_factor(kernel, stats)
                            : 1.0;
    const double expo =
        -2.0 * mean * mean * T_R / stats.noise_power * corr +
        2.0 * mean * std::sqrt(T_R) / a - 1.0;
    return std::sqrt(2.0) * mean / (a * std::sqrt(M_PI * T_R)) * std::exp(expo);
  }
  if (policy == ThresholdPolicy::OptimalTheta) theta = kOptimalThetaExp;
  const double T_c = outer_time_constant(kernel, theta, T_R);
  return false_alarm_rate(kernel, policy == ThresholdPolicy::OptimalTheta
                                      ? ThresholdPolicy::FixedTheta
                                      : policy,
                          stats, T_c, theta, corrected);
}

double response_time_for_rate(OuterKernel kernel, ThresholdPolicy policy,
                              const CorrelatorStats& stats, double target,
                              double theta, bool corrected) {
  if (target <= 0.0) throw std::invalid_argument("target rate must be > 0");
  double lo = 1.0, hi = 1e3;
  auto rate = [&](double tr) {
    return false_alarm_rate_at_response(kernel, policy, stats, tr, theta, corrected);
  };
  if (rate(lo) < target || rate(hi) > target) {
    throw std::invalid_argument("target rate outside the invertible range");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-10 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (rate(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

LogicalRates continuous_logical_rates(const DecoherenceModel& model, double T_R) {
  validate(model);
  if (T_R <= 0.0) throw std::invalid_argument("T_R must be > 0");
  LogicalRates out;
  if (const auto* relax = std::get_if<Relaxation>(&model)) {
    const auto& mu = relax->mu;
    out.gamma_X = T_R / 8.0 *
                  ((mu[0] + mu[1]) * (mu[2] + mu[3]) + mu[0] * mu[2] + mu[1] * mu[3]);
    out.gamma_Y = T_R / 8.0 * (mu[0] * mu[3] + mu[1] * mu[2]);
    out.gamma_Z = T_R / 8.0 * (mu[0] * mu[1] + mu[2] * mu[3]);
  } else {
    const MarkovianPauli m = std::visit(
        [](const auto& mm) -> MarkovianPauli {
          using T = std::decay_t<decltype(mm)>;
          if constexpr (std::is_same_v<T, Relaxation>) {
            throw std::logic_error("unreachable");
          } else {
            return as_markovian(mm);
          }
        },
        model);
    auto r = [&](int q, int e) { return m.rates[q][e]; };
    out.gamma_X = 2.0 * T_R *
                  ((r(0, 0) + r(1, 0)) * (r(2, 0) + r(3, 0)) +
                   r(0, 1) * r(2, 1) + r(1, 1) * r(3, 1));
    out.gamma_Y = 2.0 * T_R * (r(0, 1) * r(3, 1) + r(1, 1) * r(2, 1));
    out.gamma_Z = 2.0 * T_R *
                  ((r(0, 2) + r(2, 2)) * (r(1, 2) + r(3, 2)) +
                   r(0, 1) * r(1, 1) + r(2, 1) * r(3, 1));
  }
  out.gamma_L = out.gamma_X + out.gamma_Y + out.gamma_Z;
  return out;
}

RatePrediction predict_rates(const DecoherenceModel& model,
                             const CorrelatorStats& stats, OuterKernel kernel,
                             ThresholdPolicy policy, double T_c, double theta,
                             bool corrected) {
  RatePrediction p;
  if (policy == ThresholdPolicy::OptimalTheta) theta = kOptimalThetaExp;
  if (policy == ThresholdPolicy::ShiftedRect) {
    const double sd = std::sqrt(stats.noise_power / T_c);
    theta = 2.0 - 2.0 * sd / stats.mean;
  }
  p.T_R = response_time(kernel, theta, T_c);
  p.gamma_false_alarm =
      false_alarm_rate(kernel, ThresholdPolicy::FixedTheta, stats, T_c, theta, corrected);
  p.correction_factor = exponent_correction_factor(kernel, stats);
  const LogicalRates lr = continuous_logical_rates(model, p.T_R);
  p.gamma_X = lr.gamma_X;
  p.gamma_Y = lr.gamma_Y;
  p.gamma_Z = lr.gamma_Z;
  p.gamma_L = lr.gamma_L;
  p.gamma_term = 2.0 * p.gamma_false_alarm + single_error_rate_sum(model);
  return p;
}

ComparisonRatios comparison_ratios(double gamma_d, double dt, double tau_m,
                                   double eta, double T_c_e) {
  if (gamma_d <= 0.0 || dt <= 0.0 || tau_m <= 0.0 || T_c_e <= 0.0) {
    throw std::invalid_argument("comparison_ratios: all arguments must be > 0");
  }
  ComparisonRatios out;
  out.logical_ratio = 14.0 * std::log(2.0) / 11.0 * T_c_e / dt;
  const CorrelatorStats st = correlator_stats(eta);  // tau_m = 1 units
  const double snr_abs = st.snr / tau_m;              // <C>^2/A^2 per absolute time
  const double c_over_a = std::sqrt(snr_abs);
  const double gamma_fal = c_over_a / std::sqrt(M_PI * T_c_e) *
                           std::exp(-T_c_e * snr_abs);
  out.termination_ratio = 1.0 + 2.0 * gamma_fal / (4.0 * gamma_d);
  return out;
}

}  // namespace analytics
}  // namespace bslab
