#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "berrysim/qcore.hpp"
#include "oracles.hpp"

using namespace berrysim;

namespace {

double max_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

Matrix as_matrix(const HermitianOperator& h) {
  Matrix m(h.dim());
  for (int r = 0; r < h.dim(); ++r)
    for (int c = 0; c < h.dim(); ++c) m(r, c) = h(r, c);
  return m;
}

}  // namespace

TEST(Pauli, SingleQubitY) {
  const HermitianOperator y = pauli(Axis::y, 0, 1);
  EXPECT_EQ(y(0, 1), Complex(0, -1));
  EXPECT_EQ(y(1, 0), Complex(0, 1));
  EXPECT_EQ(y(0, 0), Complex(0, 0));
}

TEST(Pauli, ZOnFirstQubitOfTwo) {
  const HermitianOperator z = pauli('z', 0, 2);
  const double expect[4] = {1, 1, -1, -1};
  for (int i = 0; i < 4; ++i) EXPECT_EQ(z(i, i), Complex(expect[i], 0));
}

TEST(Pauli, Involution) {
  const Matrix x = as_matrix(pauli(Axis::x, 1, 2));
  EXPECT_LT(max_diff(x * x, Matrix::identity(4)), 1e-15);
}

TEST(Pauli, Algebra) {
  const Complex i{0, 1};
  for (int nq : {1, 2})
    for (int q = 0; q < nq; ++q) {
      const Matrix x = as_matrix(pauli(Axis::x, q, nq)), y = as_matrix(pauli(Axis::y, q, nq)),
                   z = as_matrix(pauli(Axis::z, q, nq));
      EXPECT_LE(max_diff(commutator(x, y), z * (2.0 * i)), 1e-14);
      EXPECT_LE(max_diff(commutator(y, z), x * (2.0 * i)), 1e-14);
    }
}

TEST(Pauli, RejectsBadIndex) {
  EXPECT_THROW(pauli(Axis::x, 1, 1), ArgumentError);
  EXPECT_THROW(pauli(Axis::x, 0, 3), ArgumentError);
  EXPECT_THROW(pauli('w', 0, 1), ArgumentError);
}

TEST(HermitianOperator, RejectsNonHermitian) {
  EXPECT_THROW(HermitianOperator(2, {1, 2, 3, 4}), ValidationError);
}

TEST(StateVector, RejectsUnnormalized) {
  EXPECT_THROW((StateVector{1.0, 1.0}), ValidationError);
}

TEST(Eigh, SigmaZ) {
  const SpectralDecomposition sd = eigh(pauli(Axis::z, 0, 1));
  EXPECT_DOUBLE_EQ(sd.eigenvalues[0], -1.0);
  EXPECT_DOUBLE_EQ(sd.eigenvalues[1], 1.0);
}

TEST(Eigh, TransverseField) {
  const SpectralDecomposition sd = eigh(-0.5 * pauli(Axis::x, 0, 1));
  EXPECT_NEAR(sd.eigenvalues[0], -0.5, 1e-15);
  EXPECT_NEAR(sd.eigenvalues[1], 0.5, 1e-15);
}

TEST(Eigh, RandomReconstructionAndOrthonormality) {
  std::mt19937_64 rng(11);
  for (int dim : {2, 4}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const HermitianOperator h = oracle::random_hermitian(rng, dim);
      const SpectralDecomposition sd = eigh(h);
      EXPECT_LE(max_diff(sd.reconstruct(), as_matrix(h)), 1e-12 * std::max(1.0, h.max_abs()));
      EXPECT_LE(max_diff(sd.eigenvectors.adjoint() * sd.eigenvectors, Matrix::identity(dim)), 1e-12);
      for (int k = 1; k < dim; ++k) EXPECT_LE(sd.eigenvalues[k - 1], sd.eigenvalues[k]);
    }
  }
}

TEST(Eigh, MatchesCharacteristicPolynomialRoots) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const HermitianOperator h = oracle::random_hermitian(rng, 4);
    const auto roots = oracle::characteristic_roots(h);
    ASSERT_EQ(roots.size(), 4u);
    const SpectralDecomposition sd = eigh(h);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(sd.eigenvalues[k], roots[k], 1e-9);
  }
}

TEST(Eigh, PhaseConventionIsDeterministic) {
  std::mt19937_64 rng(3);
  const HermitianOperator h = oracle::random_hermitian(rng, 4);
  const SpectralDecomposition a = eigh(h), b = eigh(h);
  EXPECT_EQ(max_diff(a.eigenvectors, b.eigenvectors), 0.0);
  for (int c = 0; c < 4; ++c) {
    int best = 0;
    for (int r = 1; r < 4; ++r)
      if (std::abs(a.eigenvectors(r, c)) > std::abs(a.eigenvectors(best, c)) + 1e-12) best = r;
    EXPECT_NEAR(a.eigenvectors(best, c).imag(), 0.0, 1e-14);
    EXPECT_GT(a.eigenvectors(best, c).real(), 0.0);
  }
}

TEST(Expectation, Basics) {
  const StateVector up = StateVector::basis(2, 0);
  EXPECT_DOUBLE_EQ(expectation(up, pauli(Axis::z, 0, 1)), 1.0);
  EXPECT_DOUBLE_EQ(expectation(up, pauli(Axis::y, 0, 1)), 0.0);
  const double s = 1.0 / std::sqrt(2.0);
  const StateVector plus_y{Complex(s, 0), Complex(0, s)};
  EXPECT_NEAR(expectation(plus_y, pauli(Axis::y, 0, 1)), 1.0, 1e-15);
}

TEST(EvolveStep, EigenstateStaysPut) {
  const HermitianOperator h = -0.5 * 3.0 * pauli(Axis::z, 0, 1);
  const StateVector psi = evolve_step(StateVector::basis(2, 0), h, 0.37);
  EXPECT_LE(std::abs(expectation(psi, pauli(Axis::z, 0, 1)) - 1.0), 1e-12);
}

TEST(EvolveStep, PiRotationFlipsSpin) {
  const double h_r = 2.0;
  const HermitianOperator h = -0.5 * h_r * pauli(Axis::x, 0, 1);
  const StateVector psi = evolve_step(StateVector::basis(2, 0), h, std::numbers::pi / h_r);
  EXPECT_NEAR(std::norm(psi[1]), 1.0, 1e-12);
}

TEST(EvolveStep, UnitarityAndTaylorOracle) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dt(0.01, 3.0);
  for (int dim : {2, 4}) {
    for (int trial = 0; trial < 200; ++trial) {
      const HermitianOperator h = oracle::random_hermitian(rng, dim);
      const double t = dt(rng);
      const Matrix u = unitary_step(h, t);
      EXPECT_LE(max_diff(u, oracle::taylor_expm(h, t)), 1e-11);
      const StateVector psi = evolve_step(StateVector::basis(dim, trial % dim), h, t);
      EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    }
  }
}

TEST(EvolveStep, RejectsBadStep) {
  EXPECT_THROW(unitary_step(pauli(Axis::x, 0, 1), 0.0), ArgumentError);
  EXPECT_THROW(evolve_step(StateVector::basis(4, 0), pauli(Axis::x, 0, 1), 1.0), ArgumentError);
}
