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

#include "bslab/gauge_bloch.hpp"

#include <cmath>

namespace bslab {

namespace {

// Channel axes: 0,1 measure X of the gauge qubit; 2,3 measure Z.
constexpr bool kXAxis[4] = {true, true, false, false};

// Output sign per (subspace, channel): G3 flips in QX, G1 flips in QZ,
// both flip in QY.
constexpr double kSign[4][4] = {
    {+1, +1, +1, +1},  // Q0
    {+1, +1, -1, +1},  // QX
    {-1, +1, -1, +1},  // QY
    {-1, +1, +1, +1},  // QZ
};

}  // namespace

Pauli pauli_mult(Pauli a, Pauli b) {
  if (a == Pauli::I) return b;
  if (b == Pauli::I) return a;
  if (a == b) return Pauli::I;
  const int s = static_cast<int>(a) + static_cast<int>(b);  // 1+2, 1+3, 2+3
  return static_cast<Pauli>(6 - s);
}

LogicalBloch pauli_conjugate(Pauli p, const LogicalBloch& r) {
  switch (p) {
    case Pauli::X: return {r.x, -r.y, -r.z};
    case Pauli::Y: return {-r.x, r.y, -r.z};
    case Pauli::Z: return {-r.x, -r.y, r.z};
    default: return r;
  }
}

GaugeBlochTrajectory::GaugeBlochTrajectory(const DetectorBank& bank,
                                           const ErrorInjectionPlan& plan,
                                           double dt_step,
                                           const GaugeQubitState& init)
    : bank_(bank), dt_(dt_step), state_(init) {
  bank_.validate();
  validate(plan.model);
  if (dt_step <= 0.0 || dt_step > max_dt_step(bank) * (1.0 + 1e-9)) {
    throw std::invalid_argument("dt_step must be in (0, 5e-3 * min(2 tau_k)]");
  }
  for (int k = 0; k < 4; ++k) {
    const DetectorChannel& ch = bank_.channel[k];
    constants_[k].noise_scale = std::sqrt(ch.tau / dt_);
    constants_[k].dt_over_tau = dt_ / ch.tau;
    constants_[k].damp = std::exp(-std::max(0.0, ch.gamma_excess()) * dt_);
    constants_[k].K = ch.K;
    constants_[k].eps = ch.eps;
    constants_[k].phase_free = (ch.K == 0.0 && ch.eps == 0.0);
  }
  if (!is_trivial(plan.model)) {
    if (plan.mode != InjectionMode::JumpSampling ||
        std::holds_alternative<Relaxation>(plan.model)) {
      throw std::invalid_argument(
          "gauge-Bloch engine supports Pauli models in jump-sampling mode only");
    }
    const MarkovianPauli m = std::visit(
        [](const auto& mm) -> MarkovianPauli {
          using T = std::decay_t<decltype(mm)>;
          if constexpr (std::is_same_v<T, Relaxation>) {
            throw std::logic_error("unreachable");
          } else {
            return as_markovian(mm);
          }
        },
        plan.model);
    static const Pauli paulis[3] = {Pauli::X, Pauli::Y, Pauli::Z};
    for (int qb = 0; qb < 4; ++qb) {
      for (int e = 0; e < 3; ++e) {
        const double p = m.rates[qb][e] * dt_;
        if (p <= 0.0) continue;
        pauli_jumps_.push_back({p, qb + 1, paulis[e]});
        pauli_jump_total_ += p;
      }
    }
  }
}

void GaugeBlochTrajectory::measure_channel(int k, Rng& rng, double& out_readout) {
  const ChannelConstants& cc = constants_[k];
  const double s = kSign[static_cast<int>(state_.subspace)][k];
  // Conjugate into the frame where the channel measures +sigma_z.
  double zx = state_.x, zy = state_.y, zz = state_.z;
  if (kXAxis[k]) {
    std::swap(zx, zz);
    zy = -zy;
  }
  if (s < 0.0) {
    // conjugation by sigma_x turns the -Z measurement into +Z
    zy = -zy;
    zz = -zz;
  }
  const double p_plus = std::min(1.0, std::max(0.0, 0.5 * (1.0 + zz)));
  const double center = (rng.uniform() < p_plus) ? 1.0 : -1.0;
  const double readout = center + cc.noise_scale * rng.normal();
  out_readout = readout;

  const double xl = readout * cc.dt_over_tau;
  const double ex = std::exp(xl);
  const double csh = 0.5 * (ex + 1.0 / ex), snh = 0.5 * (ex - 1.0 / ex);
  const double norm = csh + zz * snh;
  if (!(norm > 1e-300)) {
    throw std::runtime_error("bayesian update: vanishing posterior norm");
  }
  const double inv = 1.0 / norm;
  double nx, ny;
  if (cc.phase_free) {
    nx = zx * cc.damp * inv;
    ny = zy * cc.damp * inv;
  } else {
    // rho_01 -> rho_01 e^{i phi} damp / norm
    const double phi = (cc.K * readout + cc.eps) * dt_;
    const double c = std::cos(phi), sn = std::sin(phi);
    nx = (zx * c + zy * sn) * cc.damp * inv;
    ny = (zy * c - zx * sn) * cc.damp * inv;
  }
  const double nz = (snh + zz * csh) * inv;
  zx = nx;
  zy = ny;
  zz = nz;
  if (s < 0.0) {
    zy = -zy;
    zz = -zz;
  }
  if (kXAxis[k]) {
    std::swap(zx, zz);
    zy = -zy;
  }
  state_.x = zx;
  state_.y = zy;
  state_.z = zz;
  if (state_.norm2() > 1.0 + 1e-6) {
    throw std::runtime_error("gauge Bloch norm exceeded 1: step too large");
  }
}

SignalFrame GaugeBlochTrajectory::step(Rng& rng) {
  SignalFrame frame;
  frame.t = t_ + dt_;
  for (int k = 0; k < 4; ++k) measure_channel(k, rng, frame.I[k]);
  if (pauli_jump_total_ > 0.0) {
    const double u = rng.uniform();
    if (u < pauli_jump_total_) {
      double acc = 0.0;
      for (const auto& j : pauli_jumps_) {
        acc += j.probability;
        if (u < acc) {
          apply_error(PauliString::single(j.qubit, j.kind));
          break;
        }
      }
    }
  }
  t_ += dt_;
  return frame;
}

void GaugeBlochTrajectory::apply_error(const PauliString& error) {
  const SubspaceMap map = error_subspace_map(error);
  state_.subspace = compose(state_.subspace, map.target);
  const LogicalBloch g = pauli_conjugate(map.gauge_op,
                                         {state_.x, state_.y, state_.z});
  state_.x = g.x;
  state_.y = g.y;
  state_.z = g.z;
  state_.logical_accum = pauli_mult(map.logical_op, state_.logical_accum);
  int qubit = 0;
  Pauli kind = Pauli::I;
  for (int q = 0; q < 4; ++q) {
    if (error.factors[q] != Pauli::I) {
      qubit = q + 1;
      kind = error.factors[q];
    }
  }
  jumps_.push_back({t_, qubit, kind == Pauli::X ? 'X' : (kind == Pauli::Y ? 'Y' : 'Z')});
}

DecodeAccumulator GaugeBlochTrajectory::decode(const LogicalBloch& initial) const {
  DecodeAccumulator acc;
  if (state_.subspace != Subspace::Q0) return acc;  // zero weight
  const LogicalBloch b = pauli_conjugate(state_.logical_accum, initial);
  acc.weight = 1.0;
  acc.coherence = cd(b.x / 2.0, -b.y / 2.0);
  acc.z_diff = b.z;
  return acc;
}

}  // namespace bslab
