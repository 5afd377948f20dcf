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
#include <vector>

#include "bslab/code_space.hpp"

namespace bslab {

/// Quantum process matrix of the logical qubit over the Pauli basis
/// {I, X, Y, Z}; conditional form is trace-normalized.
struct ChiMatrix {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();

  cd operator()(int r, int c) const { return m(r, c); }
  double trace() const { return m.trace().real(); }
  void normalize() { m /= m.trace().real(); }
  bool is_hermitian(double tol = 1e-10) const {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
  }
};

/// Bloch vectors of the canonical tomography inputs +z, -z, +x, +y.
std::array<LogicalBloch, 4> tomography_inputs();

/// Logical amplitudes (alpha, beta) of the canonical tomography inputs.
std::array<std::pair<cd, cd>, 4> tomography_amplitudes();

/**
 * Reconstruct the process matrix from the images of the four canonical
 * inputs. The trace-non-preserving linear map is solved from the four
 * outputs and converted to chi via the Choi matrix; the result is then
 * trace-normalized (conditional form).
 *
 * The accumulator overload keeps the post-selection weights, which carry
 * the state-dependent survival that feeds off-diagonal elements such as
 * chi_IZ; normalizing per state first would cancel them at the +-z poles.
 *
 * Throws std::invalid_argument if the input set is not the canonical
 * tomography set (rank-deficient sets are rejected by construction).
 */
ChiMatrix chi_from_tomography(const std::array<DecodeAccumulator, 4>& outputs);

/// Trace-preserving convenience overload (unit post-selection weights).
ChiMatrix chi_from_tomography(const std::array<LogicalBloch, 4>& outputs);

/// Per-element linear fit of chi(T) samples: slope and standard error of
/// the real and imaginary parts, discarding the first `discard_fraction`
/// of the time range to avoid startup transients.
struct ChiSlopes {
  Eigen::Matrix4cd slope = Eigen::Matrix4cd::Zero();
  Eigen::Matrix4d slope_se_real = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d slope_se_imag = Eigen::Matrix4d::Zero();
};

ChiSlopes fit_chi_slopes(const std::vector<double>& times,
                         const std::vector<ChiMatrix>& chis,
                         double discard_fraction = 0.1);

}  // namespace bslab
