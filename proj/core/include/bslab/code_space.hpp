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
#include <optional>
#include <stdexcept>

#include "bslab/pauli.hpp"

namespace bslab {

/// The four joint eigenspaces of (X_all, Z_all): the code space and the
/// three error subspaces reached by single-qubit X, Y, Z errors.
enum class Subspace : std::uint8_t { Q0 = 0, QX = 1, QY = 2, QZ = 3 };

/// Composition in the Klein four-group {Q0, QX, QY, QZ}.
Subspace compose(Subspace a, Subspace b);
Subspace subspace_of_error(Pauli p);

/// Classification of a two-qubit error combination.
enum class ErrorClass : std::uint8_t {
  Harmless = 0,
  LogicalX = 1,
  LogicalY = 2,
  LogicalZ = 3,
  Detectable = 4,
};

/// Where a weight-1 error sends a code-space state, together with the
/// operations it applies to the gauge and logical qubits.
struct SubspaceMap {
  Subspace target;
  Pauli gauge_op;    // extra operation on the gauge qubit
  Pauli logical_op;  // extra operation on the logical qubit
};

/// Action of an operator as a phased permutation of the 16 code-basis
/// vectors: O |e_c> = phase[c] |e_{perm[c]}>. Every Pauli string acts this
/// way in the code basis, which keeps state updates at O(16)/O(256).
struct BasisAction {
  std::array<int, 16> perm;
  std::array<cd, 16> phase;

  Vector16 apply(const Vector16& v) const;
  Matrix16 conjugate(const Matrix16& rho) const;  // O rho O^dagger
  Matrix16 matrix() const;
};

/**
 * The orthonormal 16-vector basis {|phi_j>, X1|phi_j>, Y1|phi_j>, Z1|phi_j>}
 * (j = 1..4, block-major), in which the Q0/QX/QY/QZ subspaces occupy
 * contiguous 4x4 diagonal blocks with (X_all, Z_all) signatures
 * (+,+), (+,-), (-,-), (-,+).
 */
class CodeBasis {
public:
  static const CodeBasis& instance();

  /// Basis vectors as columns, expressed in the computational basis.
  const Matrix16& vectors() const { return basis_; }

  /// Express an operator or state in the code basis.
  Matrix16 to_code(const Matrix16& computational) const;
  Vector16 to_code(const Vector16& computational) const;
  Vector16 to_computational(const Vector16& code) const;

  /// Phased-permutation form of a Pauli string in the code basis.
  /// Throws if the snapped entries deviate by more than 1e-12.
  BasisAction action(const PauliString& p) const;

  static Subspace subspace_of_index(int code_index) {
    return static_cast<Subspace>(code_index / 4);
  }

private:
  CodeBasis();
  Matrix16 basis_;
};

/// Code-basis amplitudes of |z+> = alpha |phi_1> + beta |phi_3>.
/// Input must be normalized to 1e-10.
Vector16 encode(cd alpha, cd beta);

/// Classify a pair of weight-1 errors (applied first, then second).
/// Throws std::invalid_argument unless both arguments have weight 1.
ErrorClass classify_pair(const PauliString& first, const PauliString& second);

/// Target subspace and induced gauge/logical operations of a weight-1 error.
SubspaceMap error_subspace_map(const PauliString& error);

struct LogicalBloch {
  double x = 0.0, y = 0.0, z = 0.0;
};

struct DecodeAccumulator {
  cd coherence{0.0, 0.0};  // rho~_13 + rho~_24 over the Q0 block
  double z_diff = 0.0;     // rho~_11 + rho~_22 - rho~_33 - rho~_44
  double weight = 0.0;     // Q0-block trace after the parity projection

  DecodeAccumulator& operator+=(const DecodeAccumulator& rhs) {
    coherence += rhs.coherence;
    z_diff += rhs.z_diff;
    weight += rhs.weight;
    return *this;
  }
  LogicalBloch bloch() const;
};

/// Parity projection Pi_++ rho Pi_++ + Pi_-- rho Pi_--, restriction to the
/// Q0 block, and gauge-qubit trace-out. `rho` is in the code basis.
/// The accumulator form supports averaging over trajectories before
/// normalization.
DecodeAccumulator decode_accumulate(const Matrix16& rho);
DecodeAccumulator decode_accumulate(const Vector16& psi);

/// Normalized logical Bloch vector of a single state.
/// Throws std::runtime_error if the post-selection weight vanishes.
LogicalBloch decode(const Matrix16& rho);

}  // namespace bslab
