#include <doctest.h>

#include <bslab/decoherence.hpp>

using namespace bslab;

namespace {

Matrix16 computational_density(const Vector16& psi_comp) {
  const Vector16 code = CodeBasis::instance().to_code(psi_comp);
  return code * code.adjoint();
}

}  // namespace

TEST_CASE("negative rates are rejected") {
  Dephasing d;
  d.gamma_phi = {-1.0, 0, 0, 0};
  CHECK_THROWS_AS(validate(DecoherenceModel{d}), std::invalid_argument);
  CHECK_THROWS_AS(Dissipator(DecoherenceModel{d}), std::invalid_argument);
}

TEST_CASE("model conversions") {
  Dephasing d;
  d.gamma_phi = {0.4, 0.2, 0.0, 0.6};
  const MarkovianPauli m = as_markovian(d);
  CHECK(m.rates[0][2] == doctest::Approx(0.2));
  CHECK(m.rates[1][2] == doctest::Approx(0.1));
  CHECK(m.rates[0][0] == 0.0);

  const MarkovianPauli dep = as_markovian(Depolarizing{0.9});
  for (int q = 0; q < 4; ++q) {
    for (int e = 0; e < 3; ++e) CHECK(dep.rates[q][e] == doctest::Approx(0.3));
  }
  CHECK(single_error_rate_sum(Depolarizing{0.9}) == doctest::Approx(3.6));
  Relaxation r;
  r.mu = {0.1, 0.2, 0.3, 0.4};
  CHECK(single_error_rate_sum(r) == doctest::Approx(0.5));
}

TEST_CASE("maximally mixed state is a fixed point of Pauli channels") {
  const Matrix16 rho = Matrix16::Identity() / 16.0;
  MarkovianPauli m;
  m.rates = {{{0.1, 0.2, 0.3}, {0.0, 0.5, 0.1}, {0.2, 0.0, 0.4}, {0.3, 0.3, 0.0}}};
  const Matrix16 out = lindblad_step(rho, m, 0.05, 10);
  CHECK((out - rho).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dephasing decays a single-qubit coherence at exp(-Gamma_phi t)") {
  // |+>(x)|000> with dephasing only on qubit 1.
  Vector16 psi = Vector16::Zero();
  psi[0b0000] = 1.0 / std::sqrt(2.0);
  psi[0b1000] = 1.0 / std::sqrt(2.0);
  Matrix16 rho = computational_density(psi);
  Dephasing d;
  d.gamma_phi = {0.7, 0.0, 0.0, 0.0};
  const double t = 1.3;
  const int substeps = 200;
  rho = lindblad_step(rho, d, t, substeps);
  const Matrix16 comp =
      CodeBasis::instance().vectors() * rho * CodeBasis::instance().vectors().adjoint();
  CHECK(comp(0b0000, 0b1000).real() ==
        doctest::Approx(0.5 * std::exp(-0.7 * t)).epsilon(1e-5));
  CHECK(comp.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("relaxation drains the |1111> population at exp(-sum mu t)") {
  Vector16 psi = Vector16::Zero();
  psi[0b1111] = 1.0;
  Matrix16 rho = computational_density(psi);
  Relaxation r;
  r.mu = {0.3, 0.1, 0.2, 0.25};
  const double t = 1.7;
  rho = lindblad_step(rho, r, t, 400);
  const Matrix16 comp =
      CodeBasis::instance().vectors() * rho * CodeBasis::instance().vectors().adjoint();
  const double expected = std::exp(-(0.3 + 0.1 + 0.2 + 0.25) * t);
  CHECK(comp(0b1111, 0b1111).real() == doctest::Approx(expected).epsilon(1e-4));
  CHECK(comp.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("midpoint integrator is second order") {
  Vector16 psi = Vector16::Zero();
  psi[0b1010] = std::sqrt(0.5);
  psi[0b0000] = std::sqrt(0.5);
  const Matrix16 rho0 = computational_density(psi);
  Relaxation r;
  r.mu = {0.5, 0.4, 0.3, 0.2};
  const double t = 0.8;
  const Matrix16 fine = lindblad_step(rho0, r, t, 512);
  const Matrix16 coarse1 = lindblad_step(rho0, r, t, 8);
  const Matrix16 coarse2 = lindblad_step(rho0, r, t, 16);
  const double e1 = (coarse1 - fine).cwiseAbs().maxCoeff();
  const double e2 = (coarse2 - fine).cwiseAbs().maxCoeff();
  CHECK(e1 / e2 > 3.0);  // halving the substep shrinks the error ~4x
  CHECK(e1 / e2 < 5.0);
}

TEST_CASE("trace and Hermiticity are preserved") {
  Vector16 psi = Vector16::Zero();
  psi[3] = std::sqrt(0.3);
  psi[9] = std::sqrt(0.7);
  Matrix16 rho = computational_density(psi);
  MarkovianPauli m;
  m.rates = {{{0.1, 0.0, 0.2}, {0.0, 0.3, 0.0}, {0.1, 0.1, 0.1}, {0.0, 0.0, 0.5}}};
  rho = lindblad_step(rho, m, 0.6, 60);
  CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}
