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

#include "bslab/code_space.hpp"

#include <cmath>

namespace bslab {

namespace {

int subspace_bits(Subspace s) {
  switch (s) {
    case Subspace::Q0: return 0b00;
    case Subspace::QX: return 0b01;
    case Subspace::QY: return 0b11;
    default: return 0b10;
  }
}

Subspace subspace_from_bits(int b) {
  switch (b) {
    case 0b00: return Subspace::Q0;
    case 0b01: return Subspace::QX;
    case 0b11: return Subspace::QY;
    default: return Subspace::QZ;
  }
}

cd snap_phase(cd z, const char* what) {
  static const cd candidates[5] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (const auto& c : candidates) {
    if (std::abs(z - c) < 1e-12) return c;
  }
  throw std::runtime_error(std::string("operator is not a phased permutation in the code basis: ") + what);
}

}  // namespace

Subspace compose(Subspace a, Subspace b) {
  return subspace_from_bits(subspace_bits(a) ^ subspace_bits(b));
}

Subspace subspace_of_error(Pauli p) {
  switch (p) {
    case Pauli::X: return Subspace::QX;
    case Pauli::Y: return Subspace::QY;
    case Pauli::Z: return Subspace::QZ;
    default: return Subspace::Q0;
  }
}

Vector16 BasisAction::apply(const Vector16& v) const {
  Vector16 out;
  for (int c = 0; c < 16; ++c) out[perm[c]] = phase[c] * v[c];
  return out;
}

Matrix16 BasisAction::conjugate(const Matrix16& rho) const {
  Matrix16 out;
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      out(perm[a], perm[b]) = phase[a] * std::conj(phase[b]) * rho(a, b);
    }
  }
  return out;
}

Matrix16 BasisAction::matrix() const {
  Matrix16 m = Matrix16::Zero();
  for (int c = 0; c < 16; ++c) m(perm[c], c) = phase[c];
  return m;
}

CodeBasis::CodeBasis() {
  basis_.setZero();
  const double r = 1.0 / std::sqrt(2.0);
  // Complementary bit-string pairs of |phi_1..4>, qubit 1 most significant.
  const int pairs[4][2] = {{0b0000, 0b1111}, {0b1100, 0b0011},
                           {0b1010, 0b0101}, {0b0110, 0b1001}};
  Matrix16 phi = Matrix16::Zero();
  for (int j = 0; j < 4; ++j) {
    phi(pairs[j][0], j) = r;
    phi(pairs[j][1], j) = r;
  }
  const Matrix16 x1 = PauliString::single(1, Pauli::X).matrix();
  const Matrix16 y1 = PauliString::single(1, Pauli::Y).matrix();
  const Matrix16 z1 = PauliString::single(1, Pauli::Z).matrix();
  for (int j = 0; j < 4; ++j) {
    basis_.col(j) = phi.col(j);
    basis_.col(4 + j) = x1 * phi.col(j);
    basis_.col(8 + j) = y1 * phi.col(j);
    basis_.col(12 + j) = z1 * phi.col(j);
  }
}

const CodeBasis& CodeBasis::instance() {
  static const CodeBasis basis;
  return basis;
}

Matrix16 CodeBasis::to_code(const Matrix16& computational) const {
  return basis_.adjoint() * computational * basis_;
}

Vector16 CodeBasis::to_code(const Vector16& computational) const {
  return basis_.adjoint() * computational;
}

Vector16 CodeBasis::to_computational(const Vector16& code) const {
  return basis_ * code;
}

BasisAction CodeBasis::action(const PauliString& p) const {
  const Matrix16 m = to_code(p.matrix());
  BasisAction act{};
  const std::string name = p.str();
  for (int c = 0; c < 16; ++c) {
    int row = -1;
    cd ph{0.0, 0.0};
    for (int a = 0; a < 16; ++a) {
      cd v = snap_phase(m(a, c), name.c_str());
      if (v != cd(0.0, 0.0)) {
        if (row >= 0) throw std::runtime_error("non-monomial column for " + name);
        row = a;
        ph = v;
      }
    }
    if (row < 0) throw std::runtime_error("zero column for " + name);
    act.perm[c] = row;
    act.phase[c] = ph;
  }
  return act;
}

Vector16 encode(cd alpha, cd beta) {
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(n2 - 1.0) > 1e-10) {
    throw std::invalid_argument("encode: |alpha|^2 + |beta|^2 must be 1");
  }
  Vector16 psi = Vector16::Zero();
  psi[0] = alpha;  // |phi_1>
  psi[2] = beta;   // |phi_3>
  return psi;
}

ErrorClass classify_pair(const PauliString& first, const PauliString& second) {
  if (first.weight() != 1 || second.weight() != 1) {
    throw std::invalid_argument("classify_pair: both errors must have weight 1");
  }
  int qi = 0, qj = 0;
  Pauli a = Pauli::I, b = Pauli::I;
  for (int q = 0; q < 4; ++q) {
    if (first.factors[q] != Pauli::I) { qi = q + 1; a = first.factors[q]; }
    if (second.factors[q] != Pauli::I) { qj = q + 1; b = second.factors[q]; }
  }
  if (qi == qj) return (a == b) ? ErrorClass::Harmless : ErrorClass::Detectable;
  if (a != b) return ErrorClass::Detectable;
  const int lo = std::min(qi, qj), hi = std::max(qi, qj);
  const bool row_pair = (lo == 1 && hi == 2) || (lo == 3 && hi == 4);
  const bool col_pair = (lo == 1 && hi == 3) || (lo == 2 && hi == 4);
  switch (a) {
    case Pauli::X:
      return row_pair ? ErrorClass::Harmless : ErrorClass::LogicalX;
    case Pauli::Z:
      return col_pair ? ErrorClass::Harmless : ErrorClass::LogicalZ;
    default:  // Y
      if (col_pair) return ErrorClass::LogicalX;
      if (row_pair) return ErrorClass::LogicalZ;
      return ErrorClass::LogicalY;
  }
}

SubspaceMap error_subspace_map(const PauliString& error) {
  if (error.weight() != 1) {
    throw std::invalid_argument("error_subspace_map: weight-1 error expected");
  }
  int qubit = 0;
  Pauli p = Pauli::I;
  for (int q = 0; q < 4; ++q) {
    if (error.factors[q] != Pauli::I) { qubit = q + 1; p = error.factors[q]; }
  }
  const Subspace target = subspace_of_error(p);
  // Gauge/logical operations relative to the qubit-1 representative of the
  // same error type.
  static constexpr Pauli kGauge[3][4] = {
      {Pauli::I, Pauli::X, Pauli::I, Pauli::X},   // X_i
      {Pauli::I, Pauli::X, Pauli::Z, Pauli::Y},   // Y_i
      {Pauli::I, Pauli::I, Pauli::Z, Pauli::Z}};  // Z_i
  static constexpr Pauli kLogical[3][4] = {
      {Pauli::I, Pauli::I, Pauli::X, Pauli::X},   // X_i
      {Pauli::I, Pauli::Z, Pauli::X, Pauli::Y},   // Y_i
      {Pauli::I, Pauli::Z, Pauli::I, Pauli::Z}};  // Z_i
  const int row = (p == Pauli::X) ? 0 : (p == Pauli::Y) ? 1 : 2;
  return {target, kGauge[row][qubit - 1], kLogical[row][qubit - 1]};
}

LogicalBloch DecodeAccumulator::bloch() const {
  if (weight <= 1e-12) {
    throw std::runtime_error("decode: vanishing post-selection weight");
  }
  return {2.0 * coherence.real() / weight, -2.0 * coherence.imag() / weight,
          z_diff / weight};
}

DecodeAccumulator decode_accumulate(const Matrix16& rho) {
  // The parity projection keeps the (G3, G4) = (+,+) and (-,-) sectors; in
  // the Q0 block those are spanned by {phi_1, phi_3} and {phi_2, phi_4}.
  DecodeAccumulator acc;
  acc.coherence = rho(0, 2) + rho(1, 3);
  acc.z_diff = (rho(0, 0) + rho(1, 1) - rho(2, 2) - rho(3, 3)).real();
  acc.weight = (rho(0, 0) + rho(1, 1) + rho(2, 2) + rho(3, 3)).real();
  return acc;
}

DecodeAccumulator decode_accumulate(const Vector16& psi) {
  DecodeAccumulator acc;
  acc.coherence = psi[0] * std::conj(psi[2]) + psi[1] * std::conj(psi[3]);
  const double p0 = std::norm(psi[0]), p1 = std::norm(psi[1]);
  const double p2 = std::norm(psi[2]), p3 = std::norm(psi[3]);
  acc.z_diff = p0 + p1 - p2 - p3;
  acc.weight = p0 + p1 + p2 + p3;
  return acc;
}

LogicalBloch decode(const Matrix16& rho) { return decode_accumulate(rho).bloch(); }

}  // namespace bslab
