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

#include <vector>

#include "bslab/chi.hpp"
#include "bslab/decoherence.hpp"

namespace bslab {

/// Two-step cycle: Delta t of decoherence, Z-type parity measurement
/// (G3, G4), another Delta t, X-type parity measurement (G1, G2).
struct ProjectiveProtocolConfig {
  double dt = 1.0;   // half-cycle duration
  int cycles = 100;  // number of full cycles (duration 2 * dt each)
  DecoherenceModel decoherence = Depolarizing{0.0};
  int lindblad_substeps = 20;  // substeps of dt for the midpoint integrator
};

enum class ParityStep { ZType, XType };

/// Incoherent projector sum Pi_++ rho Pi_++ + Pi_-- rho Pi_-- for the given
/// measurement step; the trace of the result is the survival probability of
/// the step. `rho` is in the code basis.
Matrix16 projective_parity_step(const Matrix16& rho, ParityStep step);

/// Closed-form termination and logical error rates.
struct ProjectiveRates {
  double gamma_term = 0.0;
  double gamma_X = 0.0;
  double gamma_Y = 0.0;
  double gamma_Z = 0.0;
  double gamma_L = 0.0;
  double chi_IZ_coefficient = 0.0;  // d chi_IZ / dT (relaxation only)
};

ProjectiveRates projective_rates(const DecoherenceModel& model, double dt);

struct ProjectiveRunResult {
  std::vector<double> times;  // after each cycle, t = 2 dt (m+1)
  std::array<std::vector<double>, 4> survival;  // per initial logical state
  std::vector<ChiMatrix> chis;                  // conditional chi(T)
  double fitted_gamma_term = 0.0;
  double fitted_gamma_term_se = 0.0;
  ChiSlopes chi_slopes;
  double max_survival_spread = 0.0;  // across initial states
};

/// Deterministic density-matrix propagation of the two-step protocol for
/// the four canonical tomography inputs.
/// Throws std::runtime_error if survival depends on the initial logical
/// state beyond 1e-6.
ProjectiveRunResult run_projective_protocol(const ProjectiveProtocolConfig& config);

}  // namespace bslab
