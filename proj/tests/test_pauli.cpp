#include <doctest.h>

#include <bslab/pauli.hpp>
#include <bslab/rng.hpp>

using namespace bslab;

TEST_CASE("gauge operators are X1X2, X3X4, Z1Z3, Z2Z4") {
  const auto g = gauge_operators();
  CHECK(g[0].str() == "X1X2");
  CHECK(g[1].str() == "X3X4");
  CHECK(g[2].str() == "Z1Z3");
  CHECK(g[3].str() == "Z2Z4");
}

TEST_CASE("gauge products give the stabilizer generators") {
  const auto g = gauge_operators();
  CHECK((g[0] * g[1]) == x_all());
  CHECK((g[2] * g[3]) == z_all());
}

TEST_CASE("commutation structure of the gauge group") {
  const auto g = gauge_operators();
  CHECK(g[0].commutes_with(g[1]));
  CHECK(g[2].commutes_with(g[3]));
  CHECK_FALSE(g[0].commutes_with(g[2]));
  CHECK_FALSE(g[0].commutes_with(g[3]));
  CHECK_FALSE(g[1].commutes_with(g[2]));
  CHECK_FALSE(g[1].commutes_with(g[3]));
  for (const auto& gk : g) {
    CHECK(gk.commutes_with(x_all()));
    CHECK(gk.commutes_with(z_all()));
  }
}

TEST_CASE("every gauge operator squares to the identity") {
  for (const auto& gk : gauge_operators()) {
    const PauliString sq = gk * gk;
    CHECK(sq == PauliString::identity());
    CHECK((sq.matrix() - Matrix16::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("single-qubit phase algebra") {
  const auto x1 = PauliString::single(1, Pauli::X);
  const auto y1 = PauliString::single(1, Pauli::Y);
  const auto z1 = PauliString::single(1, Pauli::Z);
  CHECK((x1 * y1).phase == cd(0, 1));   // XY = iZ
  CHECK((y1 * x1).phase == cd(0, -1));  // YX = -iZ
  CHECK((x1 * y1).factors[0] == Pauli::Z);
  CHECK((z1 * x1).phase == cd(0, 1));   // ZX = iY
  CHECK((x1 * z1).phase == cd(0, -1));  // XZ = -iY
}

TEST_CASE("products compose correctly as matrices") {
  // Product phase is exact: compare string product against matrix product.
  Rng rng(7, 1);
  for (int trial = 0; trial < 50; ++trial) {
    PauliString a, b;
    for (int q = 0; q < 4; ++q) {
      a.factors[q] = static_cast<Pauli>(rng.next_u64() & 3);
      b.factors[q] = static_cast<Pauli>(rng.next_u64() & 3);
    }
    const Matrix16 lhs = (a * b).matrix();
    const Matrix16 rhs = a.matrix() * b.matrix();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("any pair either commutes or anticommutes, decided by overlap") {
  Rng rng(11, 2);
  for (int trial = 0; trial < 60; ++trial) {
    PauliString a, b;
    for (int q = 0; q < 4; ++q) {
      a.factors[q] = static_cast<Pauli>(rng.next_u64() & 3);
      b.factors[q] = static_cast<Pauli>(rng.next_u64() & 3);
    }
    const Matrix16 ab = a.matrix() * b.matrix();
    const Matrix16 ba = b.matrix() * a.matrix();
    const bool commute = (ab - ba).cwiseAbs().maxCoeff() < 1e-13;
    const bool anticommute = (ab + ba).cwiseAbs().maxCoeff() < 1e-13;
    CHECK((commute || anticommute));
    CHECK(a.commutes_with(b) == commute);
  }
}

TEST_CASE("squares carry the squared phase") {
  PauliString s = PauliString::parse("iX1Y2");
  const PauliString sq = s * s;
  CHECK(sq.factors == PauliString::identity().factors);
  CHECK(sq.phase == cd(-1.0, 0.0));
}

TEST_CASE("parse and print round trip") {
  for (const char* text : {"X1X2", "-Z3", "iY2Z4", "-iX1Y2Z3", "I"}) {
    CHECK(PauliString::parse(text).str() == text);
  }
  CHECK_THROWS_AS(PauliString::parse("Q1"), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::single(5, Pauli::X), std::invalid_argument);
}

TEST_CASE("weight counts non-identity factors") {
  CHECK(PauliString::parse("X1").weight() == 1);
  CHECK(PauliString::parse("X1Z3").weight() == 2);
  CHECK(PauliString::identity().weight() == 0);
}

TEST_CASE("y_all equals x_all times z_all") {
  CHECK((x_all() * z_all()) == y_all());
}
