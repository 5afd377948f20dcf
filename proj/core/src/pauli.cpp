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

#include "bslab/pauli.hpp"

#include <stdexcept>

namespace bslab {

namespace {

constexpr cd kI{0.0, 1.0};

// Single-qubit product table: a*b = phase(a,b) * pauli(a,b).
// Indexed by [a][b] over {I,X,Y,Z}.
struct ProductEntry {
  Pauli p;
  cd phase;
};

ProductEntry single_product(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 1.0};
  if (b == Pauli::I) return {a, 1.0};
  if (a == b) return {Pauli::I, 1.0};
  switch (a) {
    case Pauli::X:
      return (b == Pauli::Y) ? ProductEntry{Pauli::Z, kI}
                             : ProductEntry{Pauli::Y, -kI};  // X*Z = -iY
    case Pauli::Y:
      return (b == Pauli::Z) ? ProductEntry{Pauli::X, kI}
                             : ProductEntry{Pauli::Z, -kI};  // Y*X = -iZ
    default:
      return (b == Pauli::X) ? ProductEntry{Pauli::Y, kI}
                             : ProductEntry{Pauli::X, -kI};  // Z*Y = -iX
  }
}

Eigen::Matrix2cd single_matrix(Pauli p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -kI, kI, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    default: return 'Z';
  }
}

PauliString PauliString::single(int qubit, Pauli p) {
  if (qubit < 1 || qubit > 4) throw std::invalid_argument("qubit index must be 1..4");
  PauliString s;
  s.factors[qubit - 1] = p;
  return s;
}

PauliString PauliString::parse(const std::string& text) {
  PauliString s;
  std::size_t i = 0;
  if (text.compare(0, 2, "-i") == 0) { s.phase = -kI; i = 2; }
  else if (!text.empty() && text[0] == '-') { s.phase = -1.0; i = 1; }
  else if (!text.empty() && text[0] == 'i') { s.phase = kI; i = 1; }
  while (i < text.size()) {
    char c = text[i++];
    Pauli p;
    switch (c) {
      case 'I': p = Pauli::I; break;
      case 'X': p = Pauli::X; break;
      case 'Y': p = Pauli::Y; break;
      case 'Z': p = Pauli::Z; break;
      default: throw std::invalid_argument("bad Pauli letter in: " + text);
    }
    if (p == Pauli::I && (i >= text.size() || !std::isdigit(text[i]))) {
      continue;  // bare identity
    }
    if (i >= text.size()) throw std::invalid_argument("missing qubit index in: " + text);
    int q = text[i++] - '0';
    s = s * PauliString::single(q, p);
  }
  return s;
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  PauliString out;
  out.phase = phase * rhs.phase;
  for (int q = 0; q < 4; ++q) {
    auto e = single_product(factors[q], rhs.factors[q]);
    out.factors[q] = e.p;
    out.phase *= e.phase;
  }
  return out;
}

bool PauliString::commutes_with(const PauliString& rhs) const {
  int anti = 0;
  for (int q = 0; q < 4; ++q) {
    Pauli a = factors[q], b = rhs.factors[q];
    if (a != Pauli::I && b != Pauli::I && a != b) ++anti;
  }
  return (anti % 2) == 0;
}

int PauliString::weight() const {
  int w = 0;
  for (auto f : factors) w += (f != Pauli::I);
  return w;
}

Matrix16 PauliString::matrix() const {
  std::array<Eigen::Matrix2cd, 4> m;
  for (int q = 0; q < 4; ++q) m[q] = single_matrix(factors[q]);
  Matrix16 full;
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) {
      cd v = phase;
      for (int q = 0; q < 4; ++q) {
        v *= m[q]((r >> (3 - q)) & 1, (c >> (3 - q)) & 1);
      }
      full(r, c) = v;
    }
  }
  return full;
}

std::string PauliString::str() const {
  std::string out;
  if (phase == cd(-1.0, 0.0)) out += "-";
  else if (phase == kI) out += "i";
  else if (phase == -kI) out += "-i";
  bool any = false;
  for (int q = 0; q < 4; ++q) {
    if (factors[q] != Pauli::I) {
      out += pauli_char(factors[q]);
      out += static_cast<char>('1' + q);
      any = true;
    }
  }
  if (!any) out += "I";
  return out;
}

bool PauliString::operator==(const PauliString& rhs) const {
  return phase == rhs.phase && factors == rhs.factors;
}

std::array<PauliString, 4> gauge_operators() {
  return {PauliString::parse("X1X2"), PauliString::parse("X3X4"),
          PauliString::parse("Z1Z3"), PauliString::parse("Z2Z4")};
}

PauliString x_all() { return PauliString::parse("X1X2X3X4"); }
PauliString z_all() { return PauliString::parse("Z1Z2Z3Z4"); }
PauliString y_all() { return PauliString::parse("Y1Y2Y3Y4"); }

}  // namespace bslab
