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

#include "bslab/trajectory.hpp"

namespace bslab {

/// Reduced description of a direct-product state: the gauge-qubit Bloch
/// vector, the occupied subspace, and the accumulated logical operation.
struct GaugeQubitState {
  double x = 0.0, y = 0.0, z = 1.0;  // |z+>
  Subspace subspace = Subspace::Q0;
  Pauli logical_accum = Pauli::I;

  double norm2() const { return x * x + y * y + z * z; }
};

/**
 * Gauge-qubit Bloch trajectory with explicit subspace bookkeeping.
 *
 * Implements the Ito stochastic evolution of the gauge qubit under the four
 * measurement channels via the exact per-step measurement update, so that on
 * a shared noise stream it tracks the embedded gauge state of the full
 * 16-dimensional engine to rounding accuracy. Output signs follow the
 * occupied subspace: I3 flips in QX, I1 flips in QZ, both flip in QY.
 *
 * Decoherence is supported in jump-sampling mode for Pauli models only
 * (lowering operators leave the product form).
 */
class GaugeBlochTrajectory {
public:
  GaugeBlochTrajectory(const DetectorBank& bank, const ErrorInjectionPlan& plan,
                       double dt_step,
                       const GaugeQubitState& init = GaugeQubitState{});

  SignalFrame step(Rng& rng);

  const GaugeQubitState& state() const { return state_; }
  double time() const { return t_; }
  const std::vector<JumpEvent>& jump_log() const { return jumps_; }

  /// Instantaneous weight-1 error: subspace move plus gauge/logical ops.
  void apply_error(const PauliString& error);

  /// Decoded logical contribution given the initial logical Bloch vector;
  /// zero weight outside the code space.
  DecodeAccumulator decode(const LogicalBloch& initial) const;

private:
  void measure_channel(int k, Rng& rng, double& out_readout);

  DetectorBank bank_;
  double dt_;
  double t_ = 0.0;
  GaugeQubitState state_;
  std::vector<JumpEvent> jumps_;

  struct PauliJump {
    double probability;
    int qubit;
    Pauli kind;
  };
  std::vector<PauliJump> pauli_jumps_;
  double pauli_jump_total_ = 0.0;

  struct ChannelConstants {
    double noise_scale = 1.0;
    double dt_over_tau = 0.0;
    double damp = 1.0;
    double K = 0.0;
    double eps = 0.0;
    bool phase_free = true;
  };
  std::array<ChannelConstants, 4> constants_{};
};

/// Bloch image of r under conjugation by a Pauli operator.
LogicalBloch pauli_conjugate(Pauli p, const LogicalBloch& r);

/// Letter product in the Pauli group modulo phase.
Pauli pauli_mult(Pauli a, Pauli b);

}  // namespace bslab
