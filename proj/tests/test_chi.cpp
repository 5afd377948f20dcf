#include <doctest.h>

#include <bslab/chi.hpp>
#include <bslab/gauge_bloch.hpp>

using namespace bslab;

namespace {

std::array<LogicalBloch, 4> apply_affine(const Eigen::Matrix3d& M,
                                         const Eigen::Vector3d& c) {
  std::array<LogicalBloch, 4> out;
  const auto in = tomography_inputs();
  for (int s = 0; s < 4; ++s) {
    Eigen::Vector3d r{in[s].x, in[s].y, in[s].z};
    Eigen::Vector3d o = M * r + c;
    out[s] = {o[0], o[1], o[2]};
  }
  return out;
}

}  // namespace

TEST_CASE("identity channel gives chi_II = 1") {
  const auto chi = chi_from_tomography(tomography_inputs());
  CHECK(chi(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(chi.m.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(chi.is_hermitian());
  CHECK(chi.trace() == doctest::Approx(1.0));
}

TEST_CASE("unitary X flip gives chi_XX = 1") {
  auto outputs = tomography_inputs();
  for (auto& b : outputs) b = pauli_conjugate(Pauli::X, b);
  const auto chi = chi_from_tomography(outputs);
  CHECK(chi(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("phase-flip mixture gives diagonal I/Z weights") {
  const double p = 0.12;
  Eigen::Matrix3d M = Eigen::Matrix3d::Identity();
  M(0, 0) = M(1, 1) = 1.0 - 2.0 * p;  // x, y shrink; z preserved
  const auto chi = chi_from_tomography(apply_affine(M, Eigen::Vector3d::Zero()));
  CHECK(chi(0, 0).real() == doctest::Approx(1.0 - p).epsilon(1e-10));
  CHECK(chi(3, 3).real() == doctest::Approx(p).epsilon(1e-10));
  CHECK(std::abs(chi(0, 3)) < 1e-12);
}

TEST_CASE("amplitude damping reproduces the known chi matrix") {
  const double g = 0.3;
  const double s = std::sqrt(1.0 - g);
  Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
  M(0, 0) = M(1, 1) = s;
  M(2, 2) = 1.0 - g;
  Eigen::Vector3d c{0.0, 0.0, g};
  const auto chi = chi_from_tomography(apply_affine(M, c));
  const double a = 0.5 * (1.0 + s), b = 0.5 * (1.0 - s);
  CHECK(chi(0, 0).real() == doctest::Approx(a * a).epsilon(1e-10));
  CHECK(chi(3, 3).real() == doctest::Approx(b * b).epsilon(1e-10));
  CHECK(chi(0, 3).real() == doctest::Approx(a * b).epsilon(1e-10));
  CHECK(chi(0, 3).imag() == doctest::Approx(0.0));
  CHECK(chi(1, 1).real() == doctest::Approx(g / 4.0).epsilon(1e-10));
  CHECK(chi(2, 2).real() == doctest::Approx(g / 4.0).epsilon(1e-10));
  CHECK(chi(1, 2).imag() == doctest::Approx(-g / 4.0).epsilon(1e-10));
  CHECK(chi.is_hermitian());
}

TEST_CASE("post-selection weights feed the off-diagonal elements") {
  // Raw map E(rho) = K rho K^dag with K = 1 + eps Z, left unnormalized:
  // chi proportional to {{1, eps}, {eps, eps^2}} over (I, Z).
  const double eps = 0.08;
  std::array<DecodeAccumulator, 4> acc;
  const auto inputs = tomography_inputs();
  for (int s = 0; s < 4; ++s) {
    Eigen::Matrix2cd k;
    k << 1.0 + eps, 0.0, 0.0, 1.0 - eps;
    Eigen::Matrix2cd rho;
    rho << 0.5 * (1 + inputs[s].z), 0.5 * (inputs[s].x - cd(0, 1) * inputs[s].y),
        0.5 * (inputs[s].x + cd(0, 1) * inputs[s].y), 0.5 * (1 - inputs[s].z);
    const Eigen::Matrix2cd out = k * rho * k.adjoint();
    acc[s].weight = out.trace().real();
    acc[s].coherence = out(0, 1);
    acc[s].z_diff = (out(0, 0) - out(1, 1)).real();
  }
  const auto chi = chi_from_tomography(acc);
  const double norm = 1.0 + eps * eps;
  CHECK(chi(0, 0).real() == doctest::Approx(1.0 / norm).epsilon(1e-10));
  CHECK(chi(0, 3).real() == doctest::Approx(eps / norm).epsilon(1e-10));
  CHECK(chi(3, 0).real() == doctest::Approx(eps / norm).epsilon(1e-10));
  CHECK(chi(3, 3).real() == doctest::Approx(eps * eps / norm).epsilon(1e-8));
  CHECK(chi.is_hermitian());
}

TEST_CASE("chi slope fit recovers synthetic linear growth") {
  std::vector<double> times;
  std::vector<ChiMatrix> chis;
  const double rate = 3.5e-4;
  for (int k = 1; k <= 20; ++k) {
    const double t = 10.0 * k;
    ChiMatrix chi;
    chi.m(0, 0) = 1.0 - rate * t;
    chi.m(3, 3) = rate * t;
    chi.m(0, 3) = chi.m(3, 0) = 2.0 * rate * t;
    times.push_back(t);
    chis.push_back(chi);
  }
  const auto slopes = fit_chi_slopes(times, chis);
  CHECK(slopes.slope(3, 3).real() == doctest::Approx(rate).epsilon(1e-9));
  CHECK(slopes.slope(0, 3).real() == doctest::Approx(2.0 * rate).epsilon(1e-9));
  CHECK(slopes.slope(1, 1).real() == doctest::Approx(0.0));
}

TEST_CASE("synthetic logical X applied at known time shows a chi_XX step") {
  std::vector<double> times;
  std::vector<ChiMatrix> chis;
  for (int k = 1; k <= 10; ++k) {
    times.push_back(k);
    auto outputs = tomography_inputs();
    if (k > 5) {
      for (auto& b : outputs) b = pauli_conjugate(Pauli::X, b);
    }
    chis.push_back(chi_from_tomography(outputs));
  }
  CHECK(chis[4](1, 1).real() == doctest::Approx(0.0));
  CHECK(chis[5](1, 1).real() == doctest::Approx(1.0));
}
