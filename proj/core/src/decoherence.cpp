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

#include "bslab/decoherence.hpp"

namespace bslab {

namespace {

void check_nonnegative(double r) {
  if (r < 0.0) throw std::invalid_argument("decoherence rates must be >= 0");
}

}  // namespace

void validate(const DecoherenceModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MarkovianPauli>) {
          for (const auto& q : m.rates)
            for (double r : q) check_nonnegative(r);
        } else if constexpr (std::is_same_v<T, Dephasing>) {
          for (double r : m.gamma_phi) check_nonnegative(r);
        } else if constexpr (std::is_same_v<T, Relaxation>) {
          for (double r : m.mu) check_nonnegative(r);
        } else {
          check_nonnegative(m.gamma_d);
        }
      },
      model);
}

bool is_trivial(const DecoherenceModel& model) {
  return single_error_rate_sum(model) == 0.0;
}

MarkovianPauli as_markovian(const MarkovianPauli& m) { return m; }

MarkovianPauli as_markovian(const Dephasing& d) {
  MarkovianPauli m;
  for (int q = 0; q < 4; ++q) m.rates[q][2] = d.gamma_phi[q] / 2.0;
  return m;
}

MarkovianPauli as_markovian(const Depolarizing& d) {
  MarkovianPauli m;
  for (int q = 0; q < 4; ++q)
    for (int e = 0; e < 3; ++e) m.rates[q][e] = d.gamma_d / 3.0;
  return m;
}

double single_error_rate_sum(const DecoherenceModel& model) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        double sum = 0.0;
        if constexpr (std::is_same_v<T, MarkovianPauli>) {
          for (const auto& q : m.rates)
            for (double r : q) sum += r;
        } else if constexpr (std::is_same_v<T, Dephasing>) {
          for (double r : m.gamma_phi) sum += r / 2.0;
        } else if constexpr (std::is_same_v<T, Relaxation>) {
          for (double r : m.mu) sum += r / 2.0;
        } else {
          sum = 4.0 * m.gamma_d;
        }
        return sum;
      },
      model);
}

Dissipator::Dissipator(const DecoherenceModel& model) {
  validate(model);
  const auto& basis = CodeBasis::instance();
  const BasisAction id = basis.action(PauliString::identity());
  static const Pauli kPaulis[3] = {Pauli::X, Pauli::Y, Pauli::Z};

  auto add_pauli_jump = [&](int qubit, Pauli p, double rate) {
    if (rate <= 0.0) return;
    const BasisAction e = basis.action(PauliString::single(qubit, p));
    terms_.push_back({rate, e, e});
    terms_.push_back({-rate, id, id});
  };

  if (const auto* relax = std::get_if<Relaxation>(&model)) {
    for (int q = 0; q < 4; ++q) {
      const double mu = relax->mu[q];
      if (mu <= 0.0) continue;
      const BasisAction x = basis.action(PauliString::single(q + 1, Pauli::X));
      const BasisAction y = basis.action(PauliString::single(q + 1, Pauli::Y));
      const BasisAction z = basis.action(PauliString::single(q + 1, Pauli::Z));
      // sigma- rho sigma+ with sigma- = (X + iY)/2.
      terms_.push_back({mu / 4.0, x, x});
      terms_.push_back({mu / 4.0, y, y});
      terms_.push_back({cd(0.0, mu / 4.0), y, x});
      terms_.push_back({cd(0.0, -mu / 4.0), x, y});
      // -{sigma+ sigma-, rho}/2 with sigma+ sigma- = (1 - Z)/2.
      terms_.push_back({-mu / 2.0, id, id});
      terms_.push_back({mu / 4.0, z, id});
      terms_.push_back({mu / 4.0, id, z});
    }
    return;
  }
  MarkovianPauli m = std::visit(
      [](const auto& mm) -> MarkovianPauli {
        using T = std::decay_t<decltype(mm)>;
        if constexpr (std::is_same_v<T, Relaxation>) {
          throw std::logic_error("unreachable");
        } else {
          return as_markovian(mm);
        }
      },
      model);
  for (int q = 0; q < 4; ++q) {
    for (int e = 0; e < 3; ++e) add_pauli_jump(q + 1, kPaulis[e], m.rates[q][e]);
  }
}

Matrix16 Dissipator::apply(const Matrix16& rho) const {
  Matrix16 out = Matrix16::Zero();
  for (const auto& t : terms_) {
    for (int a = 0; a < 16; ++a) {
      const int ra = t.left.perm[a];
      const cd la = t.coeff * t.left.phase[a];
      for (int b = 0; b < 16; ++b) {
        // (L rho R)_{left.perm[a], b'} picks rho_{a, b} with R acting on the
        // right: column b of R sends rho_{a, b} into column perm with phase.
        out(ra, t.right.perm[b]) += la * std::conj(t.right.phase[b]) * rho(a, b);
      }
    }
  }
  return out;
}

Matrix16 lindblad_step(const Matrix16& rho, const Dissipator& dissipator,
                       double dt_step, int substeps) {
  if (substeps < 1) substeps = 1;
  const double h = dt_step / substeps;
  Matrix16 r = rho;
  for (int s = 0; s < substeps; ++s) {
    const Matrix16 k1 = dissipator.apply(r);
    const Matrix16 mid = r + (0.5 * h) * k1;
    const Matrix16 k2 = dissipator.apply(mid);
    r += h * k2;
  }
  return r;
}

Matrix16 lindblad_step(const Matrix16& rho, const DecoherenceModel& model,
                       double dt_step, int substeps) {
  return lindblad_step(rho, Dissipator(model), dt_step, substeps);
}

}  // namespace bslab
