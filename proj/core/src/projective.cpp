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

#include "bslab/projective.hpp"

#include "bslab/fitting.hpp"

namespace bslab {

namespace {

struct ParityProjectors {
  Matrix16 z_pp, z_mm, x_pp, x_mm;

  static const ParityProjectors& instance() {
    static const ParityProjectors p = [] {
      const auto& basis = CodeBasis::instance();
      auto g = gauge_operators();
      const Matrix16 g1 = basis.to_code(g[0].matrix());
      const Matrix16 g2 = basis.to_code(g[1].matrix());
      const Matrix16 g3 = basis.to_code(g[2].matrix());
      const Matrix16 g4 = basis.to_code(g[3].matrix());
      const Matrix16 id = Matrix16::Identity();
      ParityProjectors p;
      p.z_pp = 0.25 * (id + g3) * (id + g4);
      p.z_mm = 0.25 * (id - g3) * (id - g4);
      p.x_pp = 0.25 * (id + g1) * (id + g2);
      p.x_mm = 0.25 * (id - g1) * (id - g2);
      return p;
    }();
    return p;
  }
};

Matrix16 initial_density(const std::pair<cd, cd>& amplitudes) {
  const Vector16 psi = encode(amplitudes.first, amplitudes.second);
  return psi * psi.adjoint();
}

}  // namespace

Matrix16 projective_parity_step(const Matrix16& rho, ParityStep step) {
  const auto& p = ParityProjectors::instance();
  if (step == ParityStep::ZType) {
    return p.z_pp * rho * p.z_pp + p.z_mm * rho * p.z_mm;
  }
  return p.x_pp * rho * p.x_pp + p.x_mm * rho * p.x_mm;
}

ProjectiveRates projective_rates(const DecoherenceModel& model, double dt) {
  validate(model);
  ProjectiveRates out;
  out.gamma_term = single_error_rate_sum(model);
  if (const auto* relax = std::get_if<Relaxation>(&model)) {
    const auto& mu = relax->mu;
    out.gamma_X = dt / 16.0 *
                  (3.0 * mu[0] * mu[2] + 2.0 * mu[0] * mu[3] +
                   3.0 * mu[1] * mu[3] + 2.0 * mu[1] * mu[2]);
    out.gamma_Y = dt / 16.0 * (mu[0] * mu[3] + mu[1] * mu[2]);
    out.gamma_Z = dt / 16.0 * (mu[0] * mu[1] + mu[2] * mu[3]);
    out.chi_IZ_coefficient = 3.0 / 16.0 * (mu[0] * mu[1] + mu[2] * mu[3]) * dt;
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
    auto r = [&](int q, int e) { return m.rates[q][e]; };  // q 0-based; e 0=X,1=Y,2=Z
    out.gamma_X = dt * (2.0 * (r(0, 0) + r(1, 0)) * (r(2, 0) + r(3, 0)) +
                        r(0, 1) * r(2, 1) + r(1, 1) * r(3, 1));
    out.gamma_Y = dt * (r(0, 1) * r(3, 1) + r(1, 1) * r(2, 1));
    out.gamma_Z = dt * (2.0 * (r(0, 2) + r(2, 2)) * (r(1, 2) + r(3, 2)) +
                        r(0, 1) * r(1, 1) + r(2, 1) * r(3, 1));
  }
  out.gamma_L = out.gamma_X + out.gamma_Y + out.gamma_Z;
  return out;
}

ProjectiveRunResult run_projective_protocol(const ProjectiveProtocolConfig& config) {
  if (config.dt <= 0.0) throw std::invalid_argument("dt must be positive");
  if (config.cycles < 1) throw std::invalid_argument("cycles must be >= 1");
  validate(config.decoherence);

  const Dissipator dissipator(config.decoherence);
  const auto amplitudes = tomography_amplitudes();

  std::array<Matrix16, 4> rho;
  for (int s = 0; s < 4; ++s) rho[s] = initial_density(amplitudes[s]);

  ProjectiveRunResult result;
  result.times.reserve(config.cycles);
  std::vector<std::array<DecodeAccumulator, 4>> decodes(config.cycles);

  for (int m = 0; m < config.cycles; ++m) {
    for (int s = 0; s < 4; ++s) {
      Matrix16& r = rho[s];
      if (!dissipator.empty()) {
        r = lindblad_step(r, dissipator, config.dt, config.lindblad_substeps);
      }
      r = projective_parity_step(r, ParityStep::ZType);
      if (!dissipator.empty()) {
        r = lindblad_step(r, dissipator, config.dt, config.lindblad_substeps);
      }
      r = projective_parity_step(r, ParityStep::XType);
      result.survival[s].push_back(r.trace().real());
      decodes[m][s] = decode_accumulate(r);
    }
    result.times.push_back(2.0 * config.dt * (m + 1));
  }

  for (int m = 0; m < config.cycles; ++m) {
    double lo = 1.0, hi = 0.0, mean = 0.0;
    for (int s = 0; s < 4; ++s) {
      const double p = result.survival[s][m];
      lo = std::min(lo, p);
      hi = std::max(hi, p);
      mean += 0.25 * p;
    }
    result.max_survival_spread =
        std::max(result.max_survival_spread, std::max(hi - mean, mean - lo));
  }
  // Survival is logical-state independent at first order in rate * dt; the
  // second order contributes (rate dt)^2 per cycle (e.g. amplitude damping
  // hits |0000>+|1111> and |1010>+|0101> differently at that order).
  const double second_order =
      std::pow(single_error_rate_sum(config.decoherence) * config.dt, 2);
  const double tolerance = 1e-6 + 2.0 * config.cycles * second_order;
  if (result.max_survival_spread > tolerance) {
    throw std::runtime_error("survival depends on the initial logical state");
  }

  result.chis.reserve(config.cycles);
  for (int m = 0; m < config.cycles; ++m) {
    result.chis.push_back(chi_from_tomography(decodes[m]));
  }

  // Termination rate from the mean survival curve.
  std::vector<SurvivalSample> samples;
  for (int m = 0; m < config.cycles; ++m) {
    double mean = 0.0;
    for (int s = 0; s < 4; ++s) mean += 0.25 * result.survival[s][m];
    samples.push_back({result.times[m], mean, 1.0});
  }
  const auto fit = fit_termination(samples);
  result.fitted_gamma_term = fit.rate;
  result.fitted_gamma_term_se = fit.stderr_;
  result.chi_slopes = fit_chi_slopes(result.times, result.chis);
  return result;
}

}  // namespace bslab
