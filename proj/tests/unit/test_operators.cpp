#include <gtest/gtest.h>

#include <random>

#include "ddesim/density_matrix.hpp"
#include "ddesim/error.hpp"
#include "ddesim/operators.hpp"
#include "oracles.hpp"

using namespace ddesim;

namespace {

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

}  // namespace

TEST(SpaceLayout, DimsAndFactories) {
  const auto l = SpaceLayout::qubits_and_boson(2);
  EXPECT_EQ(l.dims(), (std::vector<int>{2, 2, 3}));
  EXPECT_EQ(l.total_dim(), 12);
  EXPECT_EQ(l.subsystems(), 3);
  EXPECT_EQ(SpaceLayout::two_qubits().total_dim(), 4);
  const std::array<int, 2> keep = {2, 0};
  EXPECT_EQ(l.subset(keep).dims(), (std::vector<int>{2, 3}));
}

TEST(SpaceLayout, RejectsBadInput) {
  EXPECT_THROW(SpaceLayout(std::vector<int>{}), DimensionError);
  EXPECT_THROW(SpaceLayout(std::vector<int>{2, 0}), DimensionError);
  EXPECT_THROW(SpaceLayout::qubits_and_boson(0), ParameterError);
  EXPECT_THROW((void)SpaceLayout::two_qubits().dim(2), DimensionError);
}

TEST(Operators, PauliAlgebra) {
  const Complex i(0.0, 1.0);
  // |g> is the first basis vector, so sigma_z = diag(-1, 1) flips the usual sign.
  EXPECT_LT(max_abs(sigma_x() * sigma_y() + i * sigma_z()), 1e-15);
  EXPECT_LT(max_abs(sigma_y() - i * (sigma_plus() - sigma_minus())), 1e-15);
  EXPECT_LT(max_abs(commutator(sigma_plus(), sigma_minus()) - sigma_z()), 1e-15);
  // |e><e|
  ComplexMatrix excited = ComplexMatrix::Zero(2, 2);
  excited(1, 1) = 1.0;
  EXPECT_LT(max_abs(sigma_plus() * sigma_minus() - excited), 1e-15);
  EXPECT_LT(max_abs(sigma_x() - (sigma_plus() + sigma_minus())), 1e-15);
  for (const auto& s : {sigma_x(), sigma_y(), sigma_z()}) {
    EXPECT_TRUE(is_hermitian(s, 1e-15));
    EXPECT_TRUE(is_unitary(s, 1e-15));
  }
}

TEST(Operators, BosonTwoLevel) {
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 1) = 1.0;
  EXPECT_LT(max_abs(boson_destroy(1) - expected), 1e-15);
  EXPECT_THROW(boson_destroy(0), ParameterError);
}

TEST(Operators, BosonTruncatedCommutator) {
  for (int n = 1; n <= 6; ++n) {
    const ComplexMatrix a = boson_destroy(n);
    ComplexMatrix expected = ComplexMatrix::Identity(n + 1, n + 1);
    expected(n, n) -= static_cast<double>(n + 1);
    EXPECT_LT(max_abs(commutator(a, a.adjoint()) - expected), 1e-13) << "n_max=" << n;
    // a+ a = diag(0..n)
    for (int k = 0; k <= n; ++k) EXPECT_NEAR((a.adjoint() * a)(k, k).real(), k, 1e-13);
  }
}

TEST(Operators, KronMatchesIndexOracle) {
  std::mt19937_64 rng(1);
  const auto a = oracle::random_hermitian(2, rng);
  const auto b = oracle::random_hermitian(3, rng);
  EXPECT_LT(max_abs(kron(a, b) - oracle::kron(a, b)), 1e-14);
}

TEST(Operators, EmbedPlacesOperator) {
  const auto l = SpaceLayout::qubits_and_boson(2);
  const auto a = boson_destroy(2);
  const auto i2 = identity(2);
  EXPECT_LT(max_abs(embed(sigma_minus(), 0, l) - oracle::kron(oracle::kron(sigma_minus(), i2), identity(3))),
            1e-15);
  EXPECT_LT(max_abs(embed(sigma_minus(), 1, l) - oracle::kron(oracle::kron(i2, sigma_minus()), identity(3))),
            1e-15);
  EXPECT_LT(max_abs(embed(a, 2, l) - oracle::kron(oracle::kron(i2, i2), a)), 1e-15);
  EXPECT_THROW(embed(a, 0, l), DimensionError);
  EXPECT_THROW(embed(sigma_x(), 3, l), DimensionError);
}

TEST(Operators, VectorizeIsColumnStacking) {
  ComplexMatrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const ComplexVector v = vectorize(m);
  EXPECT_EQ(v(0), Complex(1.0));
  EXPECT_EQ(v(1), Complex(3.0));
  EXPECT_EQ(v(2), Complex(2.0));
  EXPECT_LT(max_abs(unvectorize(v, 2) - m), 0.0 + 1e-300);
  EXPECT_THROW(unvectorize(v, 3), DimensionError);
}

TEST(Operators, HermitizeAndChecks) {
  std::mt19937_64 rng(2);
  ComplexMatrix m = oracle::random_hermitian(4, rng);
  m(0, 1) += Complex(0.1, 0.0);
  EXPECT_FALSE(is_hermitian(m, 1e-3));
  EXPECT_TRUE(is_hermitian(hermitize(m), 1e-15));
  EXPECT_THROW(hermitize(ComplexMatrix::Zero(2, 3)), DimensionError);
  EXPECT_TRUE(is_unitary(oracle::random_unitary(4, rng), 1e-12));
}

TEST(DensityMatrix, ValidatesInvariants) {
  const auto l = SpaceLayout::two_qubits();
  EXPECT_NO_THROW(DensityMatrix(l, ComplexMatrix::Identity(4, 4) / 4.0));
  EXPECT_THROW(DensityMatrix(l, ComplexMatrix::Identity(4, 4)), NumericalError);
  EXPECT_THROW(DensityMatrix(l, ComplexMatrix::Identity(3, 3) / 3.0), DimensionError);
  ComplexMatrix neg = ComplexMatrix::Zero(4, 4);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix(l, neg), NumericalError);
  ComplexMatrix skew = ComplexMatrix::Identity(4, 4) / 4.0;
  skew(0, 1) = Complex(0.0, 0.1);
  EXPECT_THROW(DensityMatrix(l, skew), NumericalError);
}

TEST(DensityMatrix, FactoriesAndExpectation) {
  const auto l = SpaceLayout::two_qubits();
  const auto ee = DensityMatrix::basis(l, 3);
  EXPECT_NEAR(ee.expectation(embed(sigma_z(), 0, l)), 1.0, 1e-15);
  EXPECT_THROW(DensityMatrix::basis(l, 4), DimensionError);

  ComplexVector psi(4);
  psi << 0.0, 2.0, -2.0, 0.0;
  const auto a = DensityMatrix::pure(l, psi);
  EXPECT_NEAR(a.matrix().trace().real(), 1.0, 1e-15);
  EXPECT_NEAR(a.matrix()(1, 2).real(), -0.5, 1e-15);
  EXPECT_THROW(DensityMatrix::pure(l, ComplexVector::Zero(4)), NumericalError);

  std::mt19937_64 rng(3);
  const auto rho = oracle::random_density(4, rng);
  const auto op = oracle::random_hermitian(4, rng);
  EXPECT_NEAR(DensityMatrix(l, rho).expectation(op), (op * rho).trace().real(), 1e-13);
  EXPECT_THROW((void)ee.expectation(ComplexMatrix::Identity(3, 3)), DimensionError);
}

TEST(PartialTrace, MatchesLoopOracle) {
  std::mt19937_64 rng(4);
  const std::array<int, 3> d = {2, 2, 3};
  const auto layout = SpaceLayout::qubits_and_boson(2);
  for (int trial = 0; trial < 5; ++trial) {
    const auto rho = oracle::random_density(12, rng);
    for (int mask = 1; mask < 8; ++mask) {
      std::array<bool, 3> keep_flags{};
      std::vector<int> keep;
      for (int s = 0; s < 3; ++s) {
        keep_flags[static_cast<std::size_t>(s)] = (mask >> s) & 1;
        if (keep_flags[static_cast<std::size_t>(s)]) keep.push_back(s);
      }
      const auto expected = oracle::partial_trace3(rho, d, keep_flags);
      EXPECT_LT(max_abs(partial_trace(rho, layout, keep) - expected), 1e-14) << "mask " << mask;
      // order of `keep` does not change the result
      std::reverse(keep.begin(), keep.end());
      EXPECT_LT(max_abs(partial_trace(rho, layout, keep) - expected), 1e-14) << "mask " << mask;
    }
  }
}

TEST(PartialTrace, ProductStateFactorizes) {
  std::mt19937_64 rng(5);
  const auto a = oracle::random_density(2, rng);
  const auto b = oracle::random_density(2, rng);
  const auto c = oracle::random_density(3, rng);
  const DensityMatrix rho(SpaceLayout::qubits_and_boson(2), oracle::kron(oracle::kron(a, b), c));
  const std::array<int, 1> k0 = {0};
  const std::array<int, 2> k01 = {0, 1};
  EXPECT_LT(max_abs(partial_trace(rho, k0).matrix() - a), 1e-14);
  const auto r01 = partial_trace(rho, k01);
  EXPECT_EQ(r01.layout(), SpaceLayout::two_qubits());
  EXPECT_LT(max_abs(r01.matrix() - oracle::kron(a, b)), 1e-14);
}

TEST(PartialTrace, RejectsBadKeep) {
  const auto rho = DensityMatrix::basis(SpaceLayout::qubits_and_boson(1), 0);
  const std::array<int, 0> none{};
  const std::array<int, 1> out_of_range = {3};
  const std::array<int, 2> dup = {1, 1};
  EXPECT_THROW(partial_trace(rho, none), DimensionError);
  EXPECT_THROW(partial_trace(rho, out_of_range), DimensionError);
  EXPECT_THROW(partial_trace(rho, dup), DimensionError);
}

TEST(TraceDistance, KnownValues) {
  const auto l = SpaceLayout::two_qubits();
  const auto gg = DensityMatrix::basis(l, 0);
  const auto ee = DensityMatrix::basis(l, 3);
  EXPECT_NEAR(trace_distance(gg, ee), 1.0, 1e-14);
  EXPECT_NEAR(trace_distance(gg, gg), 0.0, 1e-14);
  const DensityMatrix mixed(l, ComplexMatrix::Identity(4, 4) / 4.0);
  EXPECT_NEAR(trace_distance(gg, mixed), 0.75, 1e-14);
}
