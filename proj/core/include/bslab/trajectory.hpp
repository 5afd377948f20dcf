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

#include <memory>
#include <vector>

#include "bslab/code_space.hpp"
#include "bslab/decoherence.hpp"
#include "bslab/detector.hpp"
#include "bslab/rng.hpp"

namespace bslab {

enum class InjectionMode : std::uint8_t { LindbladContinuous, JumpSampling };

struct ErrorInjectionPlan {
  InjectionMode mode = InjectionMode::LindbladContinuous;
  DecoherenceModel model = Depolarizing{0.0};
};

struct JumpEvent {
  double t = 0.0;
  int qubit = 0;     // 1..4
  char kind = 'X';   // 'X', 'Y', 'Z' Pauli jumps; '-' lowering jumps
};

/// Real signed-permutation form of a gauge operator in the code basis.
struct GaugeAction {
  std::array<int, 16> perm;
  std::array<double, 16> sign;
};

/// Actions of G_1..G_4 plus error generators, built once.
const std::array<GaugeAction, 4>& gauge_actions();

double max_dt_step(const DetectorBank& bank);

/// Expectation Tr(G_k rho) of a gauge operator; rho in the code basis.
double gauge_expectation(const Matrix16& rho, int channel);
double gauge_expectation(const Vector16& psi, int channel);

/// Draw the time-averaged readout of one channel from the two-Gaussian
/// mixture with weights Tr(Pi_+- rho), centers +-1, variance tau_k/dt.
double sample_readout(const Matrix16& rho, int channel, const DetectorBank& bank,
                      double dt_step, Rng& rng);

/**
 * Conditional measurement update for one channel and readout: Gaussian
 * likelihood reweighting of the +-1 eigenspace blocks of G_k, phase factor
 * exp[-i (K_k readout + eps_k) dt] between the blocks, residual
 * inter-block decay so ensemble dephasing totals Gamma_k, renormalization.
 *
 * Throws std::runtime_error on vanishing norm (numerical underflow).
 */
Matrix16 bayesian_update(const Matrix16& rho, int channel, double readout,
                         const DetectorBank& bank, double dt_step);

/// Full density-matrix trajectory: consecutive Bayesian updates for the
/// four channels followed by decoherence per plan.
class SmeTrajectory {
public:
  SmeTrajectory(const DetectorBank& bank, const ErrorInjectionPlan& plan,
                double dt_step, const Vector16& psi0);

  SignalFrame step(Rng& rng);

  const Matrix16& rho() const { return rho_; }
  double time() const { return t_; }
  double dt() const { return dt_; }
  const std::vector<JumpEvent>& jump_log() const { return jumps_; }

  /// Applies an instantaneous error operator (conjugation).
  void apply_error(const PauliString& error);

  /// Population of each joint (X_all, Z_all) eigenspace block.
  std::array<double, 4> block_weights() const;

  /// Gauge-qubit Bloch vector embedded in the Q0 block (product form).
  std::array<double, 3> embedded_gauge_bloch() const;

  DecodeAccumulator decode() const { return decode_accumulate(rho_); }

private:
  void apply_channel(int k, Rng& rng, SignalFrame& frame);
  void apply_decoherence(Rng& rng);

  DetectorBank bank_;
  ErrorInjectionPlan plan_;
  std::shared_ptr<const Dissipator> dissipator_;  // Lindblad mode
  double dt_;
  double t_ = 0.0;
  Matrix16 rho_;
  std::vector<JumpEvent> jumps_;
};

/**
 * Pure-state trajectory for quantum-limited detectors (eta~ = 1) with
 * jump-sampled decoherence; statistically identical to the density-matrix
 * engine on this parameter class at a fraction of the cost.
 *
 * Throws std::invalid_argument when the bank is not ideal or the plan
 * requests Lindblad-mode decoherence.
 */
class PureTrajectory {
public:
  PureTrajectory(const DetectorBank& bank, const ErrorInjectionPlan& plan,
                 double dt_step, const Vector16& psi0);

  SignalFrame step(Rng& rng);

  const Vector16& psi() const { return psi_; }
  double time() const { return t_; }
  const std::vector<JumpEvent>& jump_log() const { return jumps_; }

  void apply_error(const PauliString& error);
  std::array<double, 4> block_weights() const;
  std::array<double, 3> embedded_gauge_bloch() const;
  DecodeAccumulator decode() const { return decode_accumulate(psi_); }

private:
  void apply_jumps(Rng& rng);
  void apply_no_jump(Rng& rng);

  DetectorBank bank_;
  double dt_;
  double t_ = 0.0;
  Vector16 psi_;
  std::vector<JumpEvent> jumps_;

  // jump sampling tables
  struct PauliJump {
    double probability;  // per step
    BasisAction action;
    int qubit;
    char kind;
  };
  std::vector<PauliJump> pauli_jumps_;
  double pauli_jump_total_ = 0.0;
  std::array<double, 4> mu_{};  // relaxation rates
  bool has_relaxation_ = false;

  struct ChannelConstants {
    double noise_scale = 1.0;
    double dt_over_tau = 0.0;
    bool phase_free = true;
    bool diagonal = false;  // gauge action is diagonal in the code basis
    double K = 0.0;
    double eps = 0.0;
  };
  std::array<ChannelConstants, 4> constants_{};
  struct RelaxationConstants {
    double no_jump_a = 1.0, no_jump_b = 0.0;  // K = a + b Z_i per step
  };
  std::array<RelaxationConstants, 4> relax_{};
};

/// One step of the density-matrix evolution as a free operation.
std::pair<Matrix16, SignalFrame> sme_step(const Matrix16& rho,
                                          const DetectorBank& bank,
                                          const ErrorInjectionPlan& plan,
                                          double dt_step, Rng& rng);

}  // namespace bslab
