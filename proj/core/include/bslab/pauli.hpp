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
#include <complex>
#include <string>

#include <Eigen/Dense>

namespace bslab {

using cd = std::complex<double>;
using Vector16 = Eigen::Matrix<cd, 16, 1>;
using Matrix16 = Eigen::Matrix<cd, 16, 16>;

/** Symbols for the single-qubit Pauli operators (and identity). */
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

/**
 * A signed tensor product of single-qubit Pauli operators on four qubits.
 *
 * The phase is restricted to {+1, -1, +i, -i} and composes exactly under
 * multiplication. Qubits are numbered 1..4; qubit 1 is the most significant
 * bit of a computational basis index.
 */
struct PauliString {
  cd phase{1.0, 0.0};
  std::array<Pauli, 4> factors{Pauli::I, Pauli::I, Pauli::I, Pauli::I};

  static PauliString identity() { return {}; }
  /// Weight-1 string: operator `p` on qubit `qubit` (1-based).
  static PauliString single(int qubit, Pauli p);
  /// Parse e.g. "X1X2" or "-Z3"; phase prefix may be "", "-", "i", "-i".
  static PauliString parse(const std::string& text);

  PauliString operator*(const PauliString& rhs) const;

  bool commutes_with(const PauliString& rhs) const;
  int weight() const;
  /// Dense 16x16 matrix in the computational basis |q1 q2 q3 q4>.
  Matrix16 matrix() const;
  std::string str() const;

  bool operator==(const PauliString& rhs) const;
};

/// The four measured gauge operators [X1X2, X3X4, Z1Z3, Z2Z4].
std::array<PauliString, 4> gauge_operators();

/// Stabilizer generators X1X2X3X4 and Z1Z2Z3Z4, and their product Y_all.
PauliString x_all();
PauliString z_all();
PauliString y_all();

}  // namespace bslab
