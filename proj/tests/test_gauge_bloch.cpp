#include <doctest.h>

#include <vector>

#include <bslab/fitting.hpp>
#include <bslab/gauge_bloch.hpp>

using namespace bslab;

namespace {

const ErrorInjectionPlan kNoErrors{InjectionMode::JumpSampling, Depolarizing{0.0}};

// Literal Euler-Maruyama integrator of the Ito Bloch equations for the
// gauge qubit under four-channel monitoring (general phase back-action),
// driven by externally supplied noises. Used as a convergence oracle.
struct ItoOracle {
  double x = 0, y = 0, z = 1;

  void step(const DetectorBank& bank, const std::array<double, 4>& nu,
            double dt) {
    auto tau = [&](int k) { return bank.channel[k].tau; };
    auto K = [&](int k) { return bank.channel[k].K; };
    auto eps = [&](int k) { return bank.channel[k].eps; };
    auto gam = [&](int k) { return bank.channel[k].gamma; };
    const double sdt = std::sqrt(dt);
    auto w = [&](int k) { return nu[k] * sdt / std::sqrt(tau(k)); };

    const double dx = (1 - x * x) * (w(0) + w(1)) +
                      (K(2) * tau(2) * y - x * z) * w(2) +
                      (K(3) * tau(3) * y - x * z) * w(3) +
                      (-(gam(2) + gam(3)) * x + (eps(2) + eps(3)) * y) * dt;
    const double dy = (K(0) * tau(0) * z - x * y) * w(0) +
                      (K(1) * tau(1) * z - x * y) * w(1) -
                      (K(2) * tau(2) * x + y * z) * w(2) -
                      (K(3) * tau(3) * x + y * z) * w(3) +
                      (-(gam(0) + gam(1) + gam(2) + gam(3)) * y -
                       (eps(2) + eps(3)) * x + (eps(0) + eps(1)) * z) *
                          dt;
    const double dz = (1 - z * z) * (w(2) + w(3)) - x * z * (w(0) + w(1)) +
                      (-(gam(0) + gam(1)) * z - (eps(0) + eps(1)) * y) * dt;
    x += dx;
    y += dy;
    z += dz;
  }
};

}  // namespace

TEST_CASE("reduced model tracks the embedded gauge state of the full engine") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  const double dt = 0.01;
  SmeTrajectory full(bank, kNoErrors, dt, encode(0.6, 0.8));
  GaugeBlochTrajectory reduced(bank, kNoErrors, dt);
  Rng rng_a(21, 0), rng_b(21, 0);
  double max_dev = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const SignalFrame fa = full.step(rng_a);
    const SignalFrame fb = reduced.step(rng_b);
    for (int k = 0; k < 4; ++k) {
      CHECK(fa.I[k] == doctest::Approx(fb.I[k]).epsilon(1e-12));
    }
    const auto emb = full.embedded_gauge_bloch();
    max_dev = std::max({max_dev, std::abs(emb[0] - reduced.state().x),
                        std::abs(emb[1] - reduced.state().y),
                        std::abs(emb[2] - reduced.state().z)});
  }
  CHECK(max_dev < 1e-6);
}

TEST_CASE("reduced model matches the full engine with phase back-action") {
  DetectorBank bank = DetectorBank::uniform(1.0);
  for (auto& ch : bank.channel) {
    ch.K = 0.3;
    ch.eps = 0.15;
    ch.gamma = 1.0 / (2.0 * ch.tau) + ch.K * ch.K * ch.tau / 2.0;
  }
  const double dt = 0.005;
  SmeTrajectory full(bank, kNoErrors, dt, encode(1.0, 0.0));
  GaugeBlochTrajectory reduced(bank, kNoErrors, dt);
  Rng rng_a(22, 0), rng_b(22, 0);
  double max_dev = 0.0;
  for (int s = 0; s < 1000; ++s) {
    full.step(rng_a);
    reduced.step(rng_b);
    const auto emb = full.embedded_gauge_bloch();
    max_dev = std::max({max_dev, std::abs(emb[0] - reduced.state().x),
                        std::abs(emb[1] - reduced.state().y),
                        std::abs(emb[2] - reduced.state().z)});
  }
  CHECK(max_dev < 1e-6);
}

TEST_CASE("pure-state norm is preserved by the exact update") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  GaugeBlochTrajectory traj(bank, kNoErrors, 0.01);
  Rng rng(23, 0);
  for (int s = 0; s < 10000; ++s) {
    traj.step(rng);
    CHECK(std::abs(traj.state().norm2() - 1.0) < 1e-6);
  }
}

TEST_CASE("exact update converges to the Euler-Maruyama Ito equations") {
  // Euler-Maruyama is strong order 1 here (multiplicative noise), so the
  // per-step difference against the exact update shrinks linearly in dt.
  DetectorBank bank = DetectorBank::uniform(1.0, 0.8);
  for (auto& ch : bank.channel) {
    ch.K = 0.2;
    ch.eps = 0.1;
  }
  bank.validate();
  auto max_step_difference = [&](double dt, int steps, std::uint64_t seed) {
    GaugeBlochTrajectory exact(bank, kNoErrors, dt,
                               GaugeQubitState{0.3, 0.2, 0.5, Subspace::Q0, Pauli::I});
    ItoOracle em;
    em.x = 0.3; em.y = 0.2; em.z = 0.5;
    Rng rng(seed, 0);
    double worst = 0.0;
    for (int s = 0; s < steps; ++s) {
      // Reconstruct the per-channel noises from the emitted signals.
      const auto before = exact.state();
      const SignalFrame f = exact.step(rng);
      std::array<double, 4> nu{};
      const double comp[4] = {before.x, before.x, before.z, before.z};
      for (int k = 0; k < 4; ++k) {
        // I = comp + sqrt(tau) nu / sqrt(dt): recover the unit normal.
        nu[k] = (f.I[k] - comp[k]) * std::sqrt(dt / bank.channel[k].tau);
      }
      em.step(bank, nu, dt);
      worst = std::max({worst, std::abs(em.x - exact.state().x),
                        std::abs(em.y - exact.state().y),
                        std::abs(em.z - exact.state().z)});
      em.x = exact.state().x;  // re-anchor: compare one step at a time
      em.y = exact.state().y;
      em.z = exact.state().z;
    }
    return worst;
  };
  const double d1 = max_step_difference(4e-3, 400, 31);
  const double d2 = max_step_difference(1e-3, 400, 32);
  CHECK(d1 > d2);
  // dt down 4x => per-step mismatch down ~4x (allow a generous band, the
  // worst case is driven by the largest noise draw in the run).
  CHECK(d1 / d2 > 2.2);
  CHECK(d1 / d2 < 8.0);
  CHECK(d2 < 0.012);
}

TEST_CASE("ensemble means decay at 2 Gamma_m (x, z) and 4 Gamma_m (y)") {
  const DetectorBank bank = DetectorBank::uniform(1.0);  // Gamma_m = 0.5
  const double dt = 0.01;
  const int n = 10000, steps = 100;
  double sum_x = 0.0, sum_y = 0.0, sum_z = 0.0;
  for (int i = 0; i < n; ++i) {
    GaugeBlochTrajectory tx(bank, kNoErrors, dt,
                            GaugeQubitState{1, 0, 0, Subspace::Q0, Pauli::I});
    GaugeBlochTrajectory ty(bank, kNoErrors, dt,
                            GaugeQubitState{0, 1, 0, Subspace::Q0, Pauli::I});
    GaugeBlochTrajectory tz(bank, kNoErrors, dt,
                            GaugeQubitState{0, 0, 1, Subspace::Q0, Pauli::I});
    Rng ra(40 + i, 1), rb(40 + i, 2), rc(40 + i, 3);
    for (int s = 0; s < steps; ++s) {
      tx.step(ra);
      ty.step(rb);
      tz.step(rc);
    }
    sum_x += tx.state().x;
    sum_y += ty.state().y;
    sum_z += tz.state().z;
  }
  const double t = steps * dt;
  CHECK(sum_x / n == doctest::Approx(std::exp(-1.0 * t)).epsilon(0.03));
  CHECK(sum_z / n == doctest::Approx(std::exp(-1.0 * t)).epsilon(0.03));
  CHECK(sum_y / n == doctest::Approx(std::exp(-2.0 * t)).epsilon(0.05));
}

TEST_CASE("two-time cross-correlator decays at 2 Gamma_m and cross-pairs vanish") {
  // Raw readout products carry variance (tau_m/dt)^2, so the estimator
  // works on window-averaged signals: same correlator, 625x less noise.
  const DetectorBank bank = DetectorBank::uniform(1.0);  // Gamma_m = 0.5
  const double dt = 0.01;
  const int w = 25;                   // window of 0.25 tau_m
  const int n = 3000, burn = 300;
  const int n_windows = 60;           // per trajectory
  const int max_lag_w = 6;            // lags up to 1.5 tau_m
  std::vector<double> c12(max_lag_w + 1, 0.0), c34(max_lag_w + 1, 0.0);
  double c13 = 0, c14 = 0;
  long cnt_lag[7] = {0};
  long cnt_cross = 0;
  for (int i = 0; i < n; ++i) {
    GaugeBlochTrajectory traj(bank, kNoErrors, dt);
    Rng rng(600 + i, 4);
    for (int s = 0; s < burn; ++s) traj.step(rng);
    std::vector<std::array<double, 4>> win(n_windows, {0, 0, 0, 0});
    for (int v = 0; v < n_windows; ++v) {
      for (int s = 0; s < w; ++s) {
        const SignalFrame f = traj.step(rng);
        for (int k = 0; k < 4; ++k) win[v][k] += f.I[k] / w;
      }
    }
    for (int v = 0; v < n_windows; ++v) {
      for (int lag = 0; lag <= max_lag_w && v + lag < n_windows; ++lag) {
        c12[lag] += win[v][0] * win[v + lag][1];
        c34[lag] += win[v][2] * win[v + lag][3];
        ++cnt_lag[lag];
      }
      if (v + 4 < n_windows) {
        c13 += win[v][0] * win[v + 4][2];
        c14 += win[v][0] * win[v + 4][3];
        ++cnt_cross;
      }
    }
  }
  // Fit the decay rate over lags 1..max (lag 0 carries the noise floor).
  std::vector<double> xs, y12, y34, ws;
  for (int lag = 1; lag <= max_lag_w; ++lag) {
    xs.push_back(lag * w * dt);
    y12.push_back(std::log(c12[lag] / cnt_lag[lag]));
    y34.push_back(std::log(c34[lag] / cnt_lag[lag]));
    ws.push_back(1.0);
  }
  const auto f12 = wls_line(xs, y12, ws);
  const auto f34 = wls_line(xs, y34, ws);
  CHECK(-f12.slope == doctest::Approx(1.0).epsilon(0.08));  // 2 Gamma_m = 1
  CHECK(-f34.slope == doctest::Approx(1.0).epsilon(0.08));
  // Orthogonal-component pairs average to zero.
  // Window products have noise variance (tau_m/(w dt))^2 plus signal parts;
  // bound the mean with the empirical standard error.
  const double var_prod = (0.5 + 1.0 / (w * dt)) * (0.5 + 1.0 / (w * dt));
  const double sigma_cross = std::sqrt(var_prod / double(cnt_cross));
  CHECK(std::abs(c13 / cnt_cross) < 5.0 * sigma_cross);
  CHECK(std::abs(c14 / cnt_cross) < 5.0 * sigma_cross);
}

TEST_CASE("same-time correlator is 1, not the squared Bloch component") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  const double dt = 0.01;
  const int n = 40, steps = 100000, burn = 300;
  double prod = 0;
  long cnt = 0;
  for (int i = 0; i < n; ++i) {
    GaugeBlochTrajectory traj(bank, kNoErrors, dt);
    Rng rng(800 + i, 4);
    for (int s = 0; s < burn; ++s) traj.step(rng);
    for (int s = 0; s < steps; ++s) {
      const SignalFrame f = traj.step(rng);
      prod += f.I[0] * f.I[1];
      ++cnt;
    }
  }
  const double mean = prod / cnt;
  const double sigma = 101.0 / std::sqrt(double(cnt));
  CHECK(std::abs(mean - 1.0) < 4.0 * sigma);   // consistent with 1
  CHECK(mean > 0.5 + 4.0 * sigma);             // excludes <x^2> = 1/2
}

TEST_CASE("subspace bookkeeping flips the monitored signal signs") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  const double dt = 0.01;
  const int w = 25, n = 2000, n_windows = 30;
  double c12 = 0, c34 = 0;
  long cnt = 0;
  for (int i = 0; i < n; ++i) {
    GaugeBlochTrajectory traj(bank, kNoErrors, dt);
    Rng rng(900 + i, 5);
    for (int s = 0; s < 200; ++s) traj.step(rng);
    traj.apply_error(PauliString::single(1, Pauli::X));
    std::vector<std::array<double, 4>> win(n_windows, {0, 0, 0, 0});
    for (int v = 0; v < n_windows; ++v) {
      for (int s = 0; s < w; ++s) {
        const SignalFrame f = traj.step(rng);
        for (int k = 0; k < 4; ++k) win[v][k] += f.I[k] / w;
      }
    }
    for (int v = 0; v + 2 < n_windows; ++v) {
      c12 += win[v][0] * win[v + 2][1];
      c34 += win[v][2] * win[v + 2][3];
      ++cnt;
    }
  }
  const double expected = std::exp(-2.0 * 0.5 * 2 * w * dt);
  CHECK(c12 / cnt == doctest::Approx(expected).epsilon(0.10));
  CHECK(c34 / cnt == doctest::Approx(-expected).epsilon(0.10));
}

TEST_CASE("jump bookkeeping accumulates logical operations") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  GaugeBlochTrajectory traj(bank, kNoErrors, 0.01);
  traj.apply_error(PauliString::single(4, Pauli::Z));  // -> QZ with Z_G Z_L
  CHECK(traj.state().subspace == Subspace::QZ);
  traj.apply_error(PauliString::single(1, Pauli::Z));  // back to Q0
  CHECK(traj.state().subspace == Subspace::Q0);
  CHECK(traj.state().logical_accum == Pauli::Z);
  const auto acc = traj.decode({1.0, 0.0, 0.0});  // +x logical input
  CHECK(acc.weight == doctest::Approx(1.0));
  CHECK(acc.bloch().x == doctest::Approx(-1.0));  // Z_L flips x

  // A detectable combination leaves the trajectory outside the code space.
  GaugeBlochTrajectory traj2(bank, kNoErrors, 0.01);
  traj2.apply_error(PauliString::single(1, Pauli::X));
  traj2.apply_error(PauliString::single(2, Pauli::Z));
  CHECK(traj2.state().subspace == Subspace::QY);
  CHECK(traj2.decode({0, 0, 1}).weight == 0.0);
}

TEST_CASE("harmless and logical pairs reproduce the classification") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  static const Pauli kP[3] = {Pauli::X, Pauli::Y, Pauli::Z};
  for (int qi = 1; qi <= 4; ++qi) {
    for (int qj = 1; qj <= 4; ++qj) {
      if (qi == qj) continue;
      for (Pauli a : kP) {
        for (Pauli b : kP) {
          GaugeBlochTrajectory traj(bank, kNoErrors, 0.01);
          traj.apply_error(PauliString::single(qi, a));
          traj.apply_error(PauliString::single(qj, b));
          const auto cls = classify_pair(PauliString::single(qi, a),
                                         PauliString::single(qj, b));
          if (cls == ErrorClass::Detectable) {
            CHECK(traj.state().subspace != Subspace::Q0);
            continue;
          }
          REQUIRE(traj.state().subspace == Subspace::Q0);
          const Pauli expected =
              cls == ErrorClass::Harmless
                  ? Pauli::I
                  : (cls == ErrorClass::LogicalX
                         ? Pauli::X
                         : (cls == ErrorClass::LogicalY ? Pauli::Y : Pauli::Z));
          CHECK(traj.state().logical_accum == expected);
        }
      }
    }
  }
}

TEST_CASE("an over-norm state triggers the step-size guard") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  GaugeBlochTrajectory traj(bank, kNoErrors, 0.01,
                            GaugeQubitState{1.2, 0.0, 0.9, Subspace::Q0, Pauli::I});
  Rng rng(77, 0);
  CHECK_THROWS_AS(
      [&] {
        for (int s = 0; s < 100; ++s) traj.step(rng);
      }(),
      std::runtime_error);
}

TEST_CASE("relaxation is rejected by the reduced engine") {
  const DetectorBank bank = DetectorBank::uniform(1.0);
  Relaxation rel;
  rel.mu = {0.001, 0, 0, 0};
  CHECK_THROWS_AS(GaugeBlochTrajectory(bank, {InjectionMode::JumpSampling, rel}, 0.01),
                  std::invalid_argument);
}
