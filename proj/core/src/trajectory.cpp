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

#include "bslab/trajectory.hpp"

#include <cmath>

namespace bslab {

namespace {

std::array<GaugeAction, 4> build_gauge_actions() {
  const auto& basis = CodeBasis::instance();
  const auto ops = gauge_operators();
  std::array<GaugeAction, 4> out;
  for (int k = 0; k < 4; ++k) {
    const BasisAction a = basis.action(ops[k]);
    for (int c = 0; c < 16; ++c) {
      out[k].perm[c] = a.perm[c];
      if (std::abs(a.phase[c].imag()) > 0.0) {
        throw std::logic_error("gauge operators must be real in the code basis");
      }
      out[k].sign[c] = a.phase[c].real();
    }
  }
  return out;
}

const BasisAction& single_action(int qubit, Pauli p) {
  static const auto table = [] {
    std::array<std::array<BasisAction, 3>, 4> t{};
    for (int q = 0; q < 4; ++q) {
      t[q][0] = CodeBasis::instance().action(PauliString::single(q + 1, Pauli::X));
      t[q][1] = CodeBasis::instance().action(PauliString::single(q + 1, Pauli::Y));
      t[q][2] = CodeBasis::instance().action(PauliString::single(q + 1, Pauli::Z));
    }
    return t;
  }();
  return table[qubit - 1][static_cast<int>(p) - 1];
}

MarkovianPauli markovian_of(const DecoherenceModel& model) {
  return std::visit(
      [](const auto& mm) -> MarkovianPauli {
        using T = std::decay_t<decltype(mm)>;
        if constexpr (std::is_same_v<T, Relaxation>) {
          throw std::invalid_argument("relaxation has no Pauli-jump equivalent");
        } else {
          return as_markovian(mm);
        }
      },
      model);
}

/// Selects at most one Pauli jump this step; probabilities are rate * dt.
bool sample_pauli_jump(const MarkovianPauli& m, double dt, Rng& rng, int* qubit,
                       Pauli* kind) {
  double total = 0.0;
  for (const auto& qr : m.rates)
    for (double r : qr) total += r * dt;
  if (total <= 0.0) return false;
  const double u = rng.uniform();
  if (u >= total) return false;
  static const Pauli paulis[3] = {Pauli::X, Pauli::Y, Pauli::Z};
  double acc = 0.0;
  for (int qb = 0; qb < 4; ++qb) {
    for (int e = 0; e < 3; ++e) {
      acc += m.rates[qb][e] * dt;
      if (u < acc) {
        *qubit = qb + 1;
        *kind = paulis[e];
        return true;
      }
    }
  }
  return false;
}

char pauli_kind_char(Pauli p) {
  return p == Pauli::X ? 'X' : (p == Pauli::Y ? 'Y' : 'Z');
}

}  // namespace

const std::array<GaugeAction, 4>& gauge_actions() {
  static const std::array<GaugeAction, 4> actions = build_gauge_actions();
  return actions;
}

double max_dt_step(const DetectorBank& bank) {
  return 5e-3 * 2.0 * bank.min_tau();
}

double gauge_expectation(const Matrix16& rho, int channel) {
  const GaugeAction& g = gauge_actions()[channel];
  double m = 0.0;
  for (int c = 0; c < 16; ++c) m += g.sign[c] * rho(c, g.perm[c]).real();
  return m;
}

double gauge_expectation(const Vector16& psi, int channel) {
  const GaugeAction& g = gauge_actions()[channel];
  double m = 0.0;
  for (int c = 0; c < 16; ++c) {
    m += g.sign[c] * (std::conj(psi[g.perm[c]]) * psi[c]).real();
  }
  return m;
}

double sample_readout(const Matrix16& rho, int channel, const DetectorBank& bank,
                      double dt_step, Rng& rng) {
  const double m = gauge_expectation(rho, channel);
  const double p_plus = std::min(1.0, std::max(0.0, 0.5 * (1.0 + m)));
  const double center = (rng.uniform() < p_plus) ? 1.0 : -1.0;
  return center + std::sqrt(bank.channel[channel].tau / dt_step) * rng.normal();
}

Matrix16 bayesian_update(const Matrix16& rho, int channel, double readout,
                         const DetectorBank& bank, double dt_step) {
  if (dt_step > max_dt_step(bank) * (1.0 + 1e-9)) {
    throw std::invalid_argument("dt_step exceeds 5e-3 * min(2 tau_k)");
  }
  const DetectorChannel& ch = bank.channel[channel];
  const GaugeAction& g = gauge_actions()[channel];
  const double m = gauge_expectation(rho, channel);

  // Likelihoods e^{+-x} with the common Gaussian factor dropped.
  const double x = readout * dt_step / ch.tau;
  const double norm = std::cosh(x) + m * std::sinh(x);
  if (!(norm > 1e-300)) {
    throw std::runtime_error("bayesian update: vanishing posterior norm");
  }
  const double lp = std::exp(x), lm = 1.0 / lp;
  const double damp = std::exp(-std::max(0.0, ch.gamma_excess()) * dt_step);
  const double phi = (ch.K * readout + ch.eps) * dt_step;
  const double inv = 0.25 / norm;
  const cd coeff_rho = (lp + lm + 2.0 * damp * std::cos(phi)) * inv;
  const cd coeff_grho = cd(lp - lm, 2.0 * damp * std::sin(phi)) * inv;
  const cd coeff_rhog = std::conj(coeff_grho);
  const cd coeff_grg = (lp + lm - 2.0 * damp * std::cos(phi)) * inv;

  Matrix16 out;
  for (int i = 0; i < 16; ++i) {
    const int pi = g.perm[i];
    const double si = g.sign[i];
    for (int j = 0; j < 16; ++j) {
      const int pj = g.perm[j];
      const double sj = g.sign[j];
      out(i, j) = coeff_rho * rho(i, j) + coeff_grho * si * rho(pi, j) +
                  coeff_rhog * sj * rho(i, pj) + coeff_grg * si * sj * rho(pi, pj);
    }
  }
  return out;
}

namespace {

void apply_relaxation_jump_dm(Matrix16& rho, int qubit) {
  const BasisAction& x = single_action(qubit, Pauli::X);
  const BasisAction& y = single_action(qubit, Pauli::Y);
  Matrix16 lowered;
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      lowered(x.perm[a], x.perm[b]) = cd(0.0, 0.0);
    }
  }
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      const cd v = rho(a, b);
      lowered(x.perm[a], x.perm[b]) += 0.25 * x.phase[a] * std::conj(x.phase[b]) * v;
      lowered(y.perm[a], y.perm[b]) += 0.25 * y.phase[a] * std::conj(y.phase[b]) * v;
      lowered(y.perm[a], x.perm[b]) +=
          0.25 * cd(0.0, 1.0) * y.phase[a] * std::conj(x.phase[b]) * v;
      lowered(x.perm[a], y.perm[b]) +=
          0.25 * cd(0.0, -1.0) * x.phase[a] * std::conj(y.phase[b]) * v;
    }
  }
  const double tr = lowered.trace().real();
  if (tr <= 1e-300) throw std::runtime_error("lowering jump on empty population");
  rho = lowered / tr;
}

void apply_no_jump_dm(Matrix16& rho, const std::array<double, 4>& mu, double dt) {
  for (int i = 0; i < 4; ++i) {
    if (mu[i] <= 0.0) continue;
    const BasisAction& z = single_action(i + 1, Pauli::Z);
    const double e = std::exp(-mu[i] * dt * 0.5);
    const double a = 0.5 * (1.0 + e), b = 0.5 * (1.0 - e);
    // K rho K with K = a + b Z_i; initialize fully before accumulating the
    // permuted contributions.
    Matrix16 out = a * rho;
    for (int r = 0; r < 16; ++r) {
      const int pr = z.perm[r];
      const cd zr = z.phase[r];
      for (int c = 0; c < 16; ++c) {
        out(pr, c) += b * zr * rho(r, c);
      }
    }
    Matrix16 out2 = a * out;
    for (int c = 0; c < 16; ++c) {
      const int pc = z.perm[c];
      const cd zc = std::conj(z.phase[c]);
      for (int r = 0; r < 16; ++r) {
        out2(r, pc) += b * zc * out(r, c);
      }
    }
    rho = out2;
  }
  rho /= rho.trace().real();
}

/// Per-step lowering-jump probabilities mu_i dt (1 - <Z_i>)/2.
template <typename StateExpect>
double relaxation_probs(const std::array<double, 4>& mu, double dt,
                        StateExpect&& z_expect, std::array<double, 4>& q) {
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    q[i] = 0.0;
    if (mu[i] <= 0.0) continue;
    q[i] = mu[i] * dt * 0.5 * (1.0 - z_expect(i));
    total += q[i];
  }
  return total;
}

}  // namespace

SmeTrajectory::SmeTrajectory(const DetectorBank& bank,
                             const ErrorInjectionPlan& plan, double dt_step,
                             const Vector16& psi0)
    : bank_(bank), plan_(plan), dt_(dt_step) {
  bank_.validate();
  validate(plan_.model);
  if (dt_step <= 0.0 || dt_step > max_dt_step(bank) * (1.0 + 1e-9)) {
    throw std::invalid_argument("dt_step must be in (0, 5e-3 * min(2 tau_k)]");
  }
  if (plan_.mode == InjectionMode::LindbladContinuous && !is_trivial(plan_.model)) {
    dissipator_ = std::make_shared<const Dissipator>(plan_.model);
  }
  rho_ = psi0 * psi0.adjoint();
}

void SmeTrajectory::apply_channel(int k, Rng& rng, SignalFrame& frame) {
  const double readout = sample_readout(rho_, k, bank_, dt_, rng);
  frame.I[k] = readout;
  rho_ = bayesian_update(rho_, k, readout, bank_, dt_);
}

void SmeTrajectory::apply_decoherence(Rng& rng) {
  if (plan_.mode == InjectionMode::LindbladContinuous) {
    if (dissipator_) rho_ = lindblad_step(rho_, *dissipator_, dt_, 1);
    return;
  }
  if (const auto* relax = std::get_if<Relaxation>(&plan_.model)) {
    const auto& mu = relax->mu;
    const double bound = (mu[0] + mu[1] + mu[2] + mu[3]) * dt_;
    if (bound <= 0.0) return;
    const double u = rng.uniform();
    if (u < bound) {
      // Exact state-dependent probabilities only for draws under the bound.
      std::array<double, 4> q{};
      relaxation_probs(
          mu, dt_,
          [&](int i) {
            const BasisAction& z = single_action(i + 1, Pauli::Z);
            double zi = 0.0;
            for (int c = 0; c < 16; ++c) {
              zi += (z.phase[c] * rho_(c, z.perm[c])).real();
            }
            return zi;
          },
          q);
      double acc = 0.0;
      for (int i = 0; i < 4; ++i) {
        acc += q[i];
        if (u < acc) {
          apply_relaxation_jump_dm(rho_, i + 1);
          jumps_.push_back({t_, i + 1, '-'});
          return;
        }
      }
    }
    apply_no_jump_dm(rho_, mu, dt_);
    return;
  }
  const MarkovianPauli m = markovian_of(plan_.model);
  int qubit = 0;
  Pauli kind = Pauli::I;
  if (sample_pauli_jump(m, dt_, rng, &qubit, &kind)) {
    rho_ = single_action(qubit, kind).conjugate(rho_);
    jumps_.push_back({t_, qubit, pauli_kind_char(kind)});
  }
}

SignalFrame SmeTrajectory::step(Rng& rng) {
  SignalFrame frame;
  frame.t = t_ + dt_;
  for (int k = 0; k < 4; ++k) apply_channel(k, rng, frame);
  apply_decoherence(rng);
  t_ += dt_;
  return frame;
}

void SmeTrajectory::apply_error(const PauliString& error) {
  const BasisAction act = CodeBasis::instance().action(error);
  rho_ = act.conjugate(rho_);
}

std::array<double, 4> SmeTrajectory::block_weights() const {
  std::array<double, 4> w{};
  for (int b = 0; b < 4; ++b) {
    for (int j = 0; j < 4; ++j) w[b] += rho_(4 * b + j, 4 * b + j).real();
  }
  return w;
}

std::array<double, 3> SmeTrajectory::embedded_gauge_bloch() const {
  const cd g01 = rho_(0, 1) + rho_(2, 3);
  const double g00 = (rho_(0, 0) + rho_(2, 2)).real();
  const double g11 = (rho_(1, 1) + rho_(3, 3)).real();
  const double tr = g00 + g11;
  return {2.0 * g01.real() / tr, -2.0 * g01.imag() / tr, (g00 - g11) / tr};
}

PureTrajectory::PureTrajectory(const DetectorBank& bank,
                               const ErrorInjectionPlan& plan, double dt_step,
                               const Vector16& psi0)
    : bank_(bank), dt_(dt_step), psi_(psi0) {
  bank_.validate();
  validate(plan.model);
  if (!bank_.ideal()) {
    throw std::invalid_argument("pure-state engine requires eta~ = 1 detectors");
  }
  if (dt_step <= 0.0 || dt_step > max_dt_step(bank) * (1.0 + 1e-9)) {
    throw std::invalid_argument("dt_step must be in (0, 5e-3 * min(2 tau_k)]");
  }
  if (plan.mode == InjectionMode::LindbladContinuous && !is_trivial(plan.model)) {
    throw std::invalid_argument(
        "pure-state engine supports decoherence only in jump-sampling mode");
  }
  if (const auto* relax = std::get_if<Relaxation>(&plan.model)) {
    mu_ = relax->mu;
    for (int q = 0; q < 4; ++q) {
      has_relaxation_ |= (mu_[q] > 0.0);
      const double e = std::exp(-mu_[q] * dt_ * 0.5);
      relax_[q].no_jump_a = 0.5 * (1.0 + e);
      relax_[q].no_jump_b = 0.5 * (1.0 - e);
    }
  } else if (!is_trivial(plan.model)) {
    const MarkovianPauli m = markovian_of(plan.model);
    static const Pauli paulis[3] = {Pauli::X, Pauli::Y, Pauli::Z};
    for (int qb = 0; qb < 4; ++qb) {
      for (int e = 0; e < 3; ++e) {
        const double p = m.rates[qb][e] * dt_;
        if (p <= 0.0) continue;
        pauli_jumps_.push_back({p, single_action(qb + 1, paulis[e]), qb + 1,
                                pauli_kind_char(paulis[e])});
        pauli_jump_total_ += p;
      }
    }
  }
  for (int k = 0; k < 4; ++k) {
    const DetectorChannel& ch = bank_.channel[k];
    const GaugeAction& g = gauge_actions()[k];
    constants_[k].noise_scale = std::sqrt(ch.tau / dt_);
    constants_[k].dt_over_tau = dt_ / ch.tau;
    constants_[k].phase_free = (ch.K == 0.0 && ch.eps == 0.0);
    constants_[k].K = ch.K;
    constants_[k].eps = ch.eps;
    bool diag = true;
    for (int c = 0; c < 16; ++c) diag &= (g.perm[c] == c);
    constants_[k].diagonal = diag;
    if (!diag) {
      for (int c = 0; c < 16; ++c) {
        if (g.perm[c] != (c ^ 1)) {
          throw std::logic_error("gauge action is not a block pair swap");
        }
      }
    }
  }
}

SignalFrame PureTrajectory::step(Rng& rng) {
  SignalFrame frame;
  frame.t = t_ + dt_;
  cd* const psi = psi_.data();
  for (int k = 0; k < 4; ++k) {
    const ChannelConstants& cc = constants_[k];
    const GaugeAction& g = gauge_actions()[k];
    double m = 0.0;
    if (cc.diagonal) {
      for (int c = 0; c < 16; ++c) m += g.sign[c] * std::norm(psi[c]);
    } else {
      for (int c = 0; c < 16; ++c) {
        m += g.sign[c] * (std::conj(psi[g.perm[c]]) * psi[c]).real();
      }
    }
    const double p_plus = std::min(1.0, std::max(0.0, 0.5 * (1.0 + m)));
    const double center = (rng.uniform() < p_plus) ? 1.0 : -1.0;
    const double readout = center + cc.noise_scale * rng.normal();
    frame.I[k] = readout;

    const double x = readout * cc.dt_over_tau;
    const double ep = std::exp(0.5 * x), em = 1.0 / ep;
    // norm = cosh x + m sinh x = [(1+m) e^x + (1-m) e^-x] / 2
    const double norm = 0.5 * ((1.0 + m) * ep * ep + (1.0 - m) * em * em);
    if (!(norm > 1e-300)) {
      throw std::runtime_error("bayesian update: vanishing posterior norm");
    }
    const double inv = 1.0 / std::sqrt(norm);
    if (cc.phase_free) {
      const double c1 = 0.5 * (ep + em) * inv;
      const double c2 = 0.5 * (ep - em) * inv;
      if (cc.diagonal) {
        const double mp = c1 + c2, mm = c1 - c2;
        for (int c = 0; c < 16; ++c) psi[c] *= (g.sign[c] > 0.0) ? mp : mm;
      } else {
        // pair permutation within each block
        for (int c = 0; c < 16; c += 2) {
          const cd a = psi[c], b = psi[c + 1];
          psi[c] = c1 * a + c2 * g.sign[c] * b;
          psi[c + 1] = c1 * b + c2 * g.sign[c + 1] * a;
        }
      }
    } else {
      const cd phase = std::polar(1.0, -(cc.K * readout + cc.eps) * dt_);
      const cd c1 = 0.5 * (ep + phase * em) * inv;
      const cd c2 = 0.5 * (ep - phase * em) * inv;
      Vector16 next;
      for (int c = 0; c < 16; ++c) {
        next[c] = c1 * psi[c] + c2 * g.sign[c] * psi[g.perm[c]];
      }
      psi_ = next;
    }
  }
  apply_jumps(rng);
  t_ += dt_;
  return frame;
}

void PureTrajectory::apply_jumps(Rng& rng) {
  if (has_relaxation_) {
    // Thinning: bound each rate by mu_i dt (since <sigma+ sigma-> <= 1) and
    // evaluate the exact state-dependent probabilities only for the rare
    // draws below the bound.
    const double bound = (mu_[0] + mu_[1] + mu_[2] + mu_[3]) * dt_;
    const double u = rng.uniform();
    if (u >= bound) {
      apply_no_jump(rng);
      return;
    }
    std::array<double, 4> q{};
    const double total = relaxation_probs(
        mu_, dt_,
        [&](int i) {
          const BasisAction& z = single_action(i + 1, Pauli::Z);
          double zi = 0.0;
          for (int c = 0; c < 16; ++c) {
            zi += (z.phase[c] * psi_[c] * std::conj(psi_[z.perm[c]])).real();
          }
          return zi;
        },
        q);
    if (u < total) {
      double acc = 0.0;
      for (int i = 0; i < 4; ++i) {
        acc += q[i];
        if (u < acc) {
          const BasisAction& x = single_action(i + 1, Pauli::X);
          const BasisAction& y = single_action(i + 1, Pauli::Y);
          Vector16 lowered = 0.5 * (x.apply(psi_) + cd(0.0, 1.0) * y.apply(psi_));
          const double n2 = lowered.squaredNorm();
          if (n2 <= 1e-300) {
            throw std::runtime_error("lowering jump on empty population");
          }
          psi_ = lowered / std::sqrt(n2);
          jumps_.push_back({t_, i + 1, '-'});
          return;
        }
      }
    }
    apply_no_jump(rng);
    return;
  }
  if (pauli_jump_total_ <= 0.0) return;
  const double u = rng.uniform();
  if (u >= pauli_jump_total_) return;
  double acc = 0.0;
  for (const auto& j : pauli_jumps_) {
    acc += j.probability;
    if (u < acc) {
      psi_ = j.action.apply(psi_);
      jumps_.push_back({t_, j.qubit, j.kind});
      return;
    }
  }
}

void PureTrajectory::apply_no_jump(Rng&) {
  for (int i = 0; i < 4; ++i) {
    if (mu_[i] <= 0.0) continue;
    const BasisAction& z = single_action(i + 1, Pauli::Z);
    const double a = relax_[i].no_jump_a, b = relax_[i].no_jump_b;
    Vector16 next = a * psi_;
    for (int c = 0; c < 16; ++c) {
      next[z.perm[c]] += b * z.phase[c] * psi_[c];
    }
    psi_ = next;
  }
  psi_ /= psi_.norm();
}

void PureTrajectory::apply_error(const PauliString& error) {
  psi_ = CodeBasis::instance().action(error).apply(psi_);
}

std::array<double, 4> PureTrajectory::block_weights() const {
  std::array<double, 4> w{};
  for (int b = 0; b < 4; ++b) {
    for (int j = 0; j < 4; ++j) w[b] += std::norm(psi_[4 * b + j]);
  }
  return w;
}

std::array<double, 3> PureTrajectory::embedded_gauge_bloch() const {
  const cd g01 = psi_[0] * std::conj(psi_[1]) + psi_[2] * std::conj(psi_[3]);
  const double g00 = std::norm(psi_[0]) + std::norm(psi_[2]);
  const double g11 = std::norm(psi_[1]) + std::norm(psi_[3]);
  const double tr = g00 + g11;
  return {2.0 * g01.real() / tr, -2.0 * g01.imag() / tr, (g00 - g11) / tr};
}

std::pair<Matrix16, SignalFrame> sme_step(const Matrix16& rho,
                                          const DetectorBank& bank,
                                          const ErrorInjectionPlan& plan,
                                          double dt_step, Rng& rng) {
  SignalFrame frame;
  Matrix16 r = rho;
  for (int k = 0; k < 4; ++k) {
    const double readout = sample_readout(r, k, bank, dt_step, rng);
    frame.I[k] = readout;
    r = bayesian_update(r, k, readout, bank, dt_step);
  }
  if (plan.mode == InjectionMode::LindbladContinuous) {
    if (!is_trivial(plan.model)) r = lindblad_step(r, plan.model, dt_step, 1);
    return {r, frame};
  }
  if (const auto* relax = std::get_if<Relaxation>(&plan.model)) {
    const auto& mu = relax->mu;
    const double bound = (mu[0] + mu[1] + mu[2] + mu[3]) * dt_step;
    if (bound <= 0.0) return {r, frame};
    const double u = rng.uniform();
    if (u < bound) {
      std::array<double, 4> q{};
      relaxation_probs(
          mu, dt_step,
          [&](int i) {
            const BasisAction& z = single_action(i + 1, Pauli::Z);
            double zi = 0.0;
            for (int c = 0; c < 16; ++c) zi += (z.phase[c] * r(c, z.perm[c])).real();
            return zi;
          },
          q);
      double acc = 0.0;
      for (int i = 0; i < 4; ++i) {
        acc += q[i];
        if (u < acc) {
          apply_relaxation_jump_dm(r, i + 1);
          return {r, frame};
        }
      }
    }
    apply_no_jump_dm(r, mu, dt_step);
    return {r, frame};
  }
  const MarkovianPauli m = markovian_of(plan.model);
  int qubit = 0;
  Pauli kind = Pauli::I;
  if (sample_pauli_jump(m, dt_step, rng, &qubit, &kind)) {
    r = single_action(qubit, kind).conjugate(r);
  }
  return {r, frame};
}

}  // namespace bslab
