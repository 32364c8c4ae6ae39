#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mbsense/linalg.hpp"
#include "support/oracles.hpp"

using namespace mbsense;

TEST_CASE("dft_forward maps all-ones to a DC impulse (N=4)") {
  ComplexVec v = ComplexVec::Ones(4);
  ComplexVec f = dft_forward(v);
  CHECK(std::abs(f(0) - Complex(1.0, 0.0)) < 1e-14);
  for (int k = 1; k < 4; ++k) CHECK(std::abs(f(k)) < 1e-14);
}

TEST_CASE("dft_forward maps a unit impulse to the constant 1/N (N=4)") {
  ComplexVec v = ComplexVec::Zero(4);
  v(0) = 1.0;
  ComplexVec f = dft_forward(v);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(f(k) - Complex(0.25, 0.0)) < 1e-14);
}

TEST_CASE("dft_adjoint of (1,0,0,0) is the constant 1/4") {
  ComplexVec v = ComplexVec::Zero(4);
  v(0) = 1.0;
  ComplexVec a = dft_adjoint(v);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(a(k) - Complex(0.25, 0.0)) < 1e-14);
}

TEST_CASE("transform pair matches the dense matrix on random input (N=8)") {
  std::mt19937_64 rng(42);
  ComplexVec v = oracles::random_complex(8, rng);
  ComplexMat f = oracles::dft_matrix(8);
  CHECK((dft_forward(v) - f * v).norm() < 1e-12);
  CHECK((dft_adjoint(v) - f.adjoint() * v).norm() < 1e-12);
}

TEST_CASE("round-trip identities F F^H = I/N") {
  std::mt19937_64 rng(7);
  for (int n : {4, 8, 12, 100}) {
    ComplexVec v = oracles::random_complex(n, rng);
    CHECK((dft_adjoint(dft_forward(v)) - v / double(n)).norm() < 1e-10);
    CHECK((dft_forward(dft_adjoint(v)) - v / double(n)).norm() < 1e-10);
  }
}

TEST_CASE("Parseval under the 1/N scaling") {
  std::mt19937_64 rng(3);
  for (int n : {5, 16, 64}) {
    ComplexVec s = oracles::random_complex(n, rng);
    const double lhs = dft_adjoint(s).squaredNorm();
    CHECK(lhs == doctest::Approx(s.squaredNorm() / n).epsilon(1e-10));
  }
}

TEST_CASE("dimension mismatch raises") {
  ScaledDft dft(8);
  CHECK_THROWS_AS(dft.forward(ComplexVec::Ones(4)), DimensionError);
  CHECK_THROWS_AS(dft.adjoint(ComplexVec::Ones(16)), DimensionError);
}

TEST_CASE("HermitianMatrix rejects non-Hermitian input") {
  ComplexMat m(2, 2);
  m << Complex(1, 0), Complex(0, 1), Complex(0, 1), Complex(2, 0);
  CHECK_THROWS_AS(HermitianMatrix{m}, ContractError);
  m(0, 1) = Complex(0, -1);
  CHECK_NOTHROW(HermitianMatrix{m});
}

TEST_CASE("solve_hpd identity and diagonal cases") {
  std::mt19937_64 rng(11);
  ComplexVec b = oracles::random_complex(4, rng);
  HpdSolution sol = solve_hpd(HermitianMatrix{ComplexMat::Identity(4, 4)}, b);
  CHECK((sol.x - b).norm() < 1e-14);
  CHECK_FALSE(sol.regularized);

  ComplexMat d = ComplexMat::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  ComplexVec rhs(2);
  rhs << Complex(2, 0), Complex(8, 0);
  HpdSolution diag = solve_hpd(HermitianMatrix{d}, rhs);
  CHECK(std::abs(diag.x(0) - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(diag.x(1) - Complex(2, 0)) < 1e-14);
}

TEST_CASE("solve_hpd residual bound on random HPD systems up to dim 512") {
  std::mt19937_64 rng(19);
  for (int dim : {16, 32, 128, 512}) {
    ComplexMat g = oracles::random_complex_mat(dim, dim, rng);
    ComplexMat a = g.adjoint() * g + ComplexMat::Identity(dim, dim);
    a = 0.5 * (a + a.adjoint()).eval();
    ComplexVec b = oracles::random_complex(dim, rng);
    HpdSolution sol = solve_hpd(HermitianMatrix{a}, b);
    const double bound = 1e-8 * (a.norm() * sol.x.norm() + b.norm());
    CHECK((a * sol.x - b).norm() <= bound);
  }
}

TEST_CASE("solve_hpd ridge fallback solves the all-zero system") {
  ComplexMat zero = ComplexMat::Zero(3, 3);
  HpdSolution sol = solve_hpd(HermitianMatrix{zero}, ComplexVec::Zero(3));
  CHECK(sol.regularized);
  CHECK(sol.x.norm() == 0.0);
}

TEST_CASE("solve_hpd dimension check") {
  CHECK_THROWS_AS(solve_hpd(HermitianMatrix{ComplexMat::Identity(3, 3)},
                            ComplexVec::Ones(4)),
                  DimensionError);
}
