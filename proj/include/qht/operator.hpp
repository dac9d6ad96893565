#pragma once

// Dense finite-dimensional Hermitian operator algebra and the spectral
// projector family {A > 0}, {A >= 0}, {A < 0}, {A <= 0}, {A = 0}.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qht {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr double kTolHermitian = 1e-12;
inline constexpr double kTolTrace = 1e-10;
inline constexpr double kTolPsd = 1e-10;
/// Relative band used to classify eigenvalues as zero: 1e-9 * max(1, ||A||).
inline constexpr double kZeroBand = 1e-9;
/// Relative band used to group degenerate eigenvalues: 1e-9 * max|lambda|.
inline constexpr double kGroupBand = 1e-9;

/// A d x d complex self-adjoint matrix.
///
/// Construction rejects inputs whose Hermitian defect exceeds kTolHermitian
/// (relative to the largest entry) and stores the exact Hermitian part.
/// An optional block layout records a block-diagonal structure; spectral
/// routines then work block by block.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(Matrix entries, std::vector<Index> block_layout = {});

  /// (M + M^dagger) / 2 without any tolerance check.
  static HermitianOperator hermitian_part(const Matrix& m);
  static HermitianOperator identity(Index dim);
  static HermitianOperator zero(Index dim);
  static HermitianOperator diagonal(std::span<const double> values);

  Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  const std::vector<Index>& block_layout() const { return layout_; }
  bool has_block_layout() const { return layout_.size() > 1; }

  double trace() const;
  double frobenius_norm() const { return entries_.norm(); }

  HermitianOperator& operator+=(const HermitianOperator& other);
  HermitianOperator& operator-=(const HermitianOperator& other);
  HermitianOperator& operator*=(double scale);

  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) { return a += b; }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) { return a -= b; }
  friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }
  friend HermitianOperator operator*(HermitianOperator a, double s) { return a *= s; }

 private:
  struct Unchecked {};
  HermitianOperator(Unchecked, Matrix entries, std::vector<Index> layout)
      : entries_(std::move(entries)), layout_(std::move(layout)) {}
  void merge_layout(const HermitianOperator& other);

  Matrix entries_;
  std::vector<Index> layout_;
};

/// Re tr(A B) for Hermitian A, B.
double trace_product(const HermitianOperator& a, const HermitianOperator& b);

/// Kronecker product a (x) b. When `a` is diagonal the result carries a
/// block layout of a.dim() blocks of size b.dim().
HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);

/// Unit-trace positive semidefinite operator.
class DensityOperator {
 public:
  /// Throws ValidationError reporting trace and minimum eigenvalue if the
  /// operator is not a state within kTolTrace / kTolPsd.
  explicit DensityOperator(HermitianOperator op);

  /// Rescales a positive semidefinite operator to unit trace.
  static DensityOperator normalized(const HermitianOperator& psd);
  static DensityOperator maximally_mixed(Index dim);

  const HermitianOperator& op() const { return op_; }
  operator const HermitianOperator&() const { return op_; }
  Index dim() const { return op_.dim(); }
  const Matrix& matrix() const { return op_.matrix(); }

 private:
  HermitianOperator op_;
};

/// Orthogonal projector (P^2 = P).
class Projector {
 public:
  Projector() = default;
  /// Validates idempotence within 1e-10.
  explicit Projector(HermitianOperator op);
  /// V V^dagger for orthonormal columns V.
  static Projector from_columns(const Matrix& columns, Index dim);

  const HermitianOperator& op() const { return op_; }
  operator const HermitianOperator&() const { return op_; }
  Index dim() const { return op_.dim(); }
  /// tr(P), rounded.
  Index rank() const;

 private:
  struct Unchecked {};
  Projector(Unchecked, HermitianOperator op) : op_(std::move(op)) {}
  friend class SpectralDecomposition;
  friend struct SignPartition sign_partition(const HermitianOperator&);

  HermitianOperator op_;
};

enum class SpectralRegion { Positive, NonNegative, Negative, NonPositive, Null };

struct Eigenspace {
  double value;
  Projector projector;
  Index multiplicity;
};

class SpectralDecomposition {
 public:
  SpectralDecomposition(std::vector<double> eigenvalues, Matrix eigenvectors);

  /// Descending.
  const std::vector<double>& eigenvalues() const { return values_; }
  /// Orthonormal columns aligned with eigenvalues().
  const Matrix& eigenvectors() const { return vectors_; }
  Index dim() const { return vectors_.rows(); }

  double max_eigenvalue() const { return values_.front(); }
  double min_eigenvalue() const { return values_.back(); }
  double spectral_norm() const;
  /// 1e-9 * max(1, ||A||).
  double zero_tolerance() const;

  /// Eigenprojectors grouped within 1e-9 * max|lambda|, descending.
  std::vector<Eigenspace> eigenspaces() const;
  HermitianOperator reconstruct() const;
  Projector projector(SpectralRegion region) const;

 private:
  std::vector<double> values_;
  Matrix vectors_;
};

/// Eigendecomposition; per block when the operator has a block layout.
/// Throws ConvergenceError if the eigensolver fails.
SpectralDecomposition spectral_decompose(const HermitianOperator& a);

Projector spectral_projector(const HermitianOperator& a, SpectralRegion region);
inline Projector positive_projector(const HermitianOperator& a) { return spectral_projector(a, SpectralRegion::Positive); }
inline Projector nonnegative_projector(const HermitianOperator& a) { return spectral_projector(a, SpectralRegion::NonNegative); }
inline Projector negative_projector(const HermitianOperator& a) { return spectral_projector(a, SpectralRegion::Negative); }
inline Projector nonpositive_projector(const HermitianOperator& a) { return spectral_projector(a, SpectralRegion::NonPositive); }
inline Projector null_projector(const HermitianOperator& a) { return spectral_projector(a, SpectralRegion::Null); }

/// {A > 0}, {A < 0} and null = I - {A > 0} - {A < 0} from one decomposition.
struct SignPartition {
  Projector positive;
  Projector negative;
  Projector null;
};
SignPartition sign_partition(const HermitianOperator& a);

/// Block-diagonal operator with the given diagonal blocks. The result
/// carries the block layout. Throws ValidationError on an empty list.
HermitianOperator block_diag(std::span<const HermitianOperator> blocks);

/// Ginibre-ensemble state G G^dagger / tr(G G^dagger), G of shape dim x rank.
DensityOperator random_density(Index dim, Index rank, std::mt19937_64& rng);
/// Deterministic per seed.
DensityOperator random_density(Index dim, Index rank, std::uint64_t seed);

}  // namespace qht
