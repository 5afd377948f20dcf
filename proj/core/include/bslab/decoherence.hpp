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

#include <variant>
#include <vector>

#include "bslab/code_space.hpp"

namespace bslab {

/// Uncorrelated Markovian X/Y/Z errors; rates[qubit 0..3][X, Y, Z].
struct MarkovianPauli {
  std::array<std::array<double, 3>, 4> rates{};
};

/// Pure dephasing of each qubit; equivalent to Z jumps at gamma_phi/2.
struct Dephasing {
  std::array<double, 4> gamma_phi{};
};

/// Zero-temperature energy relaxation |1> -> |0> at rate mu_i = 1/T1_i.
struct Relaxation {
  std::array<double, 4> mu{};
};

/// Depolarizing channel: all twelve rates equal to gamma_d / 3.
struct Depolarizing {
  double gamma_d = 0.0;
};

using DecoherenceModel =
    std::variant<MarkovianPauli, Dephasing, Relaxation, Depolarizing>;

/// Throws std::invalid_argument on negative rates.
void validate(const DecoherenceModel& model);

bool is_trivial(const DecoherenceModel& model);

/// Pauli-jump equivalent, when one exists (not for Relaxation).
MarkovianPauli as_markovian(const MarkovianPauli& m);
MarkovianPauli as_markovian(const Dephasing& d);
MarkovianPauli as_markovian(const Depolarizing& d);

/// Sum of all single-qubit error rates (jump rate of detectable errors).
/// For relaxation each qubit jumps at mu_i/2 on code states.
double single_error_rate_sum(const DecoherenceModel& model);

/**
 * Precompiled dissipator D(rho) = sum_i Gamma_i (E_i rho E_i^dag
 * - {E_i^dag E_i, rho}/2) acting on code-basis density matrices.
 */
class Dissipator {
public:
  explicit Dissipator(const DecoherenceModel& model);

  Matrix16 apply(const Matrix16& rho) const;
  bool empty() const { return terms_.empty(); }

private:
  struct Term {
    cd coeff;
    BasisAction left;
    BasisAction right;  // coeff * L rho R
  };
  std::vector<Term> terms_;
};

/**
 * Midpoint (second order) Lindblad update over dt_step. `substeps` splits
 * the interval; trace and Hermiticity are preserved identically.
 */
Matrix16 lindblad_step(const Matrix16& rho, const Dissipator& dissipator,
                       double dt_step, int substeps = 1);

Matrix16 lindblad_step(const Matrix16& rho, const DecoherenceModel& model,
                       double dt_step, int substeps = 1);

}  // namespace bslab
