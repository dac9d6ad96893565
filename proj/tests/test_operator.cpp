#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qht/errors.hpp"
#include "qht/operator.hpp"
#include "test_util.hpp"

using namespace qht;
using qht::testing::max_abs;

namespace {

HermitianOperator diag(std::vector<double> v) { return HermitianOperator::diagonal(v); }

Matrix coordinate_projector(Index d, Index k) {
  Matrix m = Matrix::Zero(d, d);
  m(k, k) = 1.0;
  return m;
}

}  // namespace

TEST(HermitianOperator, RejectsNonHermitianInput) {
  Matrix m(2, 2);
  m << 1.0, 0.5, 0.0, 1.0;
  EXPECT_THROW(HermitianOperator{m}, ValidationError);
  EXPECT_THROW(HermitianOperator{Matrix(2, 3)}, DimensionMismatch);
}

TEST(HermitianOperator, SymmetrizesWithinTolerance) {
  Matrix m(2, 2);
  m << 1.0, Complex(0.5, 1e-14), Complex(0.5, 0.0), 2.0;
  const HermitianOperator a(m);
  EXPECT_EQ(a.matrix()(0, 1), std::conj(a.matrix()(1, 0)));
}

TEST(HermitianOperator, BlockLayoutMustMatchZeros) {
  Matrix m = Matrix::Identity(3, 3);
  EXPECT_NO_THROW(HermitianOperator(m, {1, 2}));
  m(0, 2) = m(2, 0) = 0.1;
  EXPECT_THROW(HermitianOperator(m, {1, 2}), ValidationError);
  EXPECT_THROW(HermitianOperator(Matrix::Identity(3, 3), {1, 1}), ValidationError);
}

TEST(DensityOperator, ReportsTraceAndMinimumEigenvalue) {
  try {
    DensityOperator rho(HermitianOperator::diagonal(std::vector<double>{0.7, 0.7}));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("trace = 1.3999"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("minimum eigenvalue"), std::string::npos);
  }
  EXPECT_THROW(DensityOperator(diag({1.5, -0.5})), ValidationError);
}

TEST(SpectralDecompose, DiagonalInput) {
  const SpectralDecomposition sd = spectral_decompose(diag({1.0, -2.0, 0.0}));
  EXPECT_EQ(sd.eigenvalues(), (std::vector<double>{1.0, 0.0, -2.0}));
  const auto spaces = sd.eigenspaces();
  ASSERT_EQ(spaces.size(), 3u);
  EXPECT_LT(max_abs(spaces[0].projector.op().matrix() - coordinate_projector(3, 0)), 1e-15);
  EXPECT_LT(max_abs(spaces[1].projector.op().matrix() - coordinate_projector(3, 2)), 1e-15);
  EXPECT_LT(max_abs(spaces[2].projector.op().matrix() - coordinate_projector(3, 1)), 1e-15);
}

TEST(SpectralDecompose, IdentityIsOneEigenspace) {
  const auto spaces = spectral_decompose(HermitianOperator::identity(4)).eigenspaces();
  ASSERT_EQ(spaces.size(), 1u);
  EXPECT_DOUBLE_EQ(spaces[0].value, 1.0);
  EXPECT_EQ(spaces[0].multiplicity, 4);
  EXPECT_LT(max_abs(spaces[0].projector.op().matrix() - Matrix::Identity(4, 4)), 1e-14);
}

// Reconstruction oracle on Ginibre Hermitian matrices, d <= 8.
TEST(SpectralDecompose, ReconstructsRandomHermitian) {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index d = 1 + trial % 8;
    const HermitianOperator a(oracle::random_hermitian(d, rng));
    const SpectralDecomposition sd = spectral_decompose(a);
    EXPECT_LE((sd.reconstruct().matrix() - a.matrix()).norm(), 1e-9 * std::max(1e-300, a.frobenius_norm()));
    EXPECT_TRUE(std::is_sorted(sd.eigenvalues().rbegin(), sd.eigenvalues().rend()));

    const auto spaces = sd.eigenspaces();
    Matrix sum = Matrix::Zero(d, d);
    double trace_sum = 0.0;
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      const Matrix& ei = spaces[i].projector.op().matrix();
      sum += ei;
      trace_sum += ei.trace().real();
      EXPECT_LT(max_abs(ei * ei - ei), 1e-10);
      for (std::size_t j = i + 1; j < spaces.size(); ++j) {
        EXPECT_LT(max_abs(ei * spaces[j].projector.op().matrix()), 1e-10);
      }
    }
    EXPECT_LT(max_abs(sum - Matrix::Identity(d, d)), 1e-10);
    EXPECT_NEAR(trace_sum, static_cast<double>(d), 1e-10);
  }
}

TEST(SpectralDecompose, GroupsDegenerateEigenvalues) {
  std::mt19937_64 rng(3);
  const Matrix u = oracle::random_unitary(4, rng);
  Eigen::VectorXd lambda(4);
  lambda << 2.0, 2.0, -1.0, -1.0;
  const HermitianOperator a(HermitianOperator::hermitian_part(u * lambda.asDiagonal() * u.adjoint()));
  const auto spaces = spectral_decompose(a).eigenspaces();
  ASSERT_EQ(spaces.size(), 2u);
  EXPECT_EQ(spaces[0].multiplicity, 2);
  EXPECT_EQ(spaces[1].projector.rank(), 2);
}

TEST(SpectralDecompose, BlockLayoutMatchesDense) {
  std::mt19937_64 rng(11);
  const std::vector<HermitianOperator> blocks{HermitianOperator(oracle::random_hermitian(2, rng)),
                                              HermitianOperator(oracle::random_hermitian(3, rng))};
  const HermitianOperator blocked = block_diag(blocks);
  ASSERT_TRUE(blocked.has_block_layout());
  const HermitianOperator dense(blocked.matrix());
  const auto a = spectral_decompose(blocked).eigenvalues();
  const auto b = spectral_decompose(dense).eigenvalues();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
  EXPECT_LT(max_abs(positive_projector(blocked).op().matrix() - positive_projector(dense).op().matrix()), 1e-10);
}

TEST(SpectralProjector, DiagonalVariants) {
  const HermitianOperator a = diag({1.0, -2.0, 0.0});
  Matrix expect_pos = Matrix::Zero(3, 3);
  expect_pos(0, 0) = 1.0;
  Matrix expect_nonpos = Matrix::Identity(3, 3) - expect_pos;
  EXPECT_LT(max_abs(positive_projector(a).op().matrix() - expect_pos), 1e-15);
  EXPECT_LT(max_abs(nonpositive_projector(a).op().matrix() - expect_nonpos), 1e-15);
  EXPECT_LT(max_abs(negative_projector(a).op().matrix() - coordinate_projector(3, 1)), 1e-15);
  EXPECT_LT(max_abs(null_projector(a).op().matrix() - coordinate_projector(3, 2)), 1e-15);
  EXPECT_LT(max_abs(nonnegative_projector(a).op().matrix() - (expect_pos + coordinate_projector(3, 2))), 1e-15);
}

TEST(SpectralProjector, ZeroOperator) {
  const HermitianOperator z = HermitianOperator::zero(3);
  EXPECT_EQ(positive_projector(z).rank(), 0);
  EXPECT_LT(max_abs(nonnegative_projector(z).op().matrix() - Matrix::Identity(3, 3)), 1e-15);
}

TEST(SpectralProjector, ZeroBandScalesWithNorm) {
  // 1e-10 is inside the band of a unit-norm operator, 1e-3 is not.
  EXPECT_EQ(positive_projector(diag({1e-10, -1.0})).rank(), 0);
  EXPECT_EQ(positive_projector(diag({1e-3, -1.0})).rank(), 1);
  // The band is 1e-9 * ||A||: at ||A|| = 1e6, 1e-4 is classified as zero.
  EXPECT_EQ(positive_projector(diag({1e-4, -1e6})).rank(), 0);
}

TEST(SpectralProjector, PartitionOfIdentity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = 1 + trial % 6;
    Matrix m = oracle::random_hermitian(d, rng);
    if (trial % 3 == 0) m.col(0).setZero(), m.row(0).setZero();  // force a null direction
    const SignPartition parts = sign_partition(HermitianOperator(m));
    const Matrix sum = parts.positive.op().matrix() + parts.negative.op().matrix() + parts.null.op().matrix();
    EXPECT_LT(max_abs(sum - Matrix::Identity(d, d)), 1e-9);
    if (trial % 3 == 0) EXPECT_GE(parts.null.rank(), 1);
  }
}

// tr(A {A > 0}) >= tr(A T) for every 0 <= T <= I.
TEST(SpectralProjector, PositivePartIsExtremal) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> t_dist(0.0, 3.0);
  for (int pair = 0; pair < 20; ++pair) {
    const DensityOperator rho0 = random_density(2, 1 + pair % 2, rng);
    const DensityOperator rho1 = random_density(2, 2, rng);
    const HermitianOperator a = rho0.op() - t_dist(rng) * rho1.op();
    const double best = trace_product(a, positive_projector(a));
    for (int k = 0; k < 100; ++k) {
      EXPECT_GE(best + 1e-12, oracle::tr_prod(a.matrix(), oracle::random_effect(2, rng)));
    }
  }
}

TEST(BlockDiag, Examples) {
  const std::vector<HermitianOperator> blocks{diag({1.0}), diag({2.0})};
  const HermitianOperator b = block_diag(blocks);
  EXPECT_LT(max_abs(b.matrix() - diag({1.0, 2.0}).matrix()), 0.0 + 1e-300);
  EXPECT_THROW(block_diag(std::span<const HermitianOperator>{}), ValidationError);

  const DensityOperator mu0 = random_density(3, 2, 9);
  const std::vector<HermitianOperator> copies(4, 0.25 * mu0.op());
  const HermitianOperator d = block_diag(copies);
  EXPECT_EQ(d.dim(), 12);
  EXPECT_NEAR(d.trace(), 1.0, 1e-14);
  EXPECT_NO_THROW(DensityOperator{d});
  EXPECT_EQ(d.block_layout(), (std::vector<Index>{3, 3, 3, 3}));
  EXPECT_EQ(d.matrix().block(0, 3, 3, 3).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Kron, DiagonalFirstFactorCarriesLayout) {
  const HermitianOperator a = diag({0.5, 0.5});
  const DensityOperator b = random_density(2, 2, 4);
  const HermitianOperator k = kron(a, b.op());
  EXPECT_EQ(k.block_layout(), (std::vector<Index>{2, 2}));
  EXPECT_LT(max_abs(k.matrix().block(2, 2, 2, 2) - 0.5 * b.matrix()), 1e-16);
}

TEST(RandomDensity, PureStateHasUnitPurity) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityOperator rho = random_density(2, 1, seed);
    EXPECT_NEAR((rho.matrix() * rho.matrix()).trace().real(), 1.0, 1e-10);
  }
}

TEST(RandomDensity, FullRankHasPositiveSpectrum) {
  const DensityOperator rho = random_density(4, 4, 123);
  EXPECT_GT(spectral_decompose(rho).min_eigenvalue(), 0.0);
}

TEST(RandomDensity, DeterministicPerSeed) {
  const DensityOperator a = random_density(3, 2, 42);
  const DensityOperator b = random_density(3, 2, 42);
  EXPECT_TRUE(a.matrix() == b.matrix());
  EXPECT_FALSE(a.matrix() == random_density(3, 2, 43).matrix());
}

TEST(RandomDensity, RejectsInvalidRank) {
  EXPECT_THROW(random_density(2, 3, 0), ValidationError);
  EXPECT_THROW(random_density(2, 0, 0), ValidationError);
}

TEST(RandomDensity, TenThousandSeedsAreStates) {
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const Index d = 1 + static_cast<Index>(seed % 5);
    const Index r = 1 + static_cast<Index>((seed / 5) % static_cast<std::uint64_t>(d));
    const DensityOperator rho = random_density(d, r, seed);
    ASSERT_NEAR(rho.op().trace(), 1.0, kTolTrace);
    ASSERT_GE(spectral_decompose(rho).min_eigenvalue(), -kTolPsd);
  }
}
