#include "qht/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qht/errors.hpp"

namespace qht {

namespace {

double max_abs_entry(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void check_layout(const Matrix& m, const std::vector<Index>& layout) {
  if (layout.empty()) return;
  Index total = 0;
  for (Index s : layout) {
    if (s <= 0) throw ValidationError("block layout entries must be positive");
    total += s;
  }
  if (total != m.rows()) {
    throw ValidationError("block layout sums to " + std::to_string(total) +
                          ", operator dimension is " + std::to_string(m.rows()));
  }
  Index row = 0;
  for (Index s : layout) {
    for (Index i = row; i < row + s; ++i) {
      for (Index j = 0; j < m.cols(); ++j) {
        if ((j < row || j >= row + s) && m(i, j) != Complex(0.0, 0.0)) {
          throw ValidationError("entry outside the declared diagonal blocks is nonzero");
        }
      }
    }
    row += s;
  }
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix entries, std::vector<Index> block_layout) {
  if (entries.rows() != entries.cols()) {
    throw DimensionMismatch("Hermitian operator must be square, got " + std::to_string(entries.rows()) +
                            "x" + std::to_string(entries.cols()));
  }
  if (entries.rows() == 0) throw ValidationError("Hermitian operator must have positive dimension");
  const double defect = max_abs_entry(entries - entries.adjoint());
  if (defect > kTolHermitian * std::max(1.0, max_abs_entry(entries))) {
    std::ostringstream os;
    os << "operator is not Hermitian: max |A - A^dagger| = " << defect;
    throw ValidationError(os.str());
  }
  check_layout(entries, block_layout);
  entries_ = (entries + entries.adjoint()) * 0.5;
  layout_ = std::move(block_layout);
}

HermitianOperator HermitianOperator::hermitian_part(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("hermitian_part needs a square matrix");
  return HermitianOperator(Unchecked{}, (m + m.adjoint()) * 0.5, {});
}

HermitianOperator HermitianOperator::identity(Index dim) {
  return HermitianOperator(Unchecked{}, Matrix::Identity(dim, dim), {});
}

HermitianOperator HermitianOperator::zero(Index dim) {
  return HermitianOperator(Unchecked{}, Matrix::Zero(dim, dim), {});
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> values) {
  Matrix m = Matrix::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = values[i];
  return HermitianOperator(Unchecked{}, std::move(m), {});
}

double HermitianOperator::trace() const { return entries_.trace().real(); }

void HermitianOperator::merge_layout(const HermitianOperator& other) {
  if (layout_ != other.layout_) layout_.clear();
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& other) {
  if (dim() != other.dim()) throw DimensionMismatch("operator sum: dimension mismatch");
  entries_ += other.entries_;
  merge_layout(other);
  return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& other) {
  if (dim() != other.dim()) throw DimensionMismatch("operator difference: dimension mismatch");
  entries_ -= other.entries_;
  merge_layout(other);
  return *this;
}

HermitianOperator& HermitianOperator::operator*=(double scale) {
  entries_ *= scale;
  return *this;
}

double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("trace_product: dimension mismatch");
  return (a.matrix().array() * b.matrix().array().conjugate()).sum().real();
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
  const Index da = a.dim();
  const Index db = b.dim();
  Matrix out = Matrix::Zero(da * db, da * db);
  bool diagonal = true;
  for (Index i = 0; i < da; ++i) {
    for (Index j = 0; j < da; ++j) {
      const Complex aij = a.matrix()(i, j);
      if (aij == Complex(0.0, 0.0)) continue;
      if (i != j) diagonal = false;
      out.block(i * db, j * db, db, db) = aij * b.matrix();
    }
  }
  std::vector<Index> layout;
  if (diagonal && da > 1) layout.assign(static_cast<std::size_t>(da), db);
  return HermitianOperator(std::move(out), std::move(layout));
}

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) {
  const double tr = op_.trace();
  const double min_eig = spectral_decompose(op_).min_eigenvalue();
  if (std::abs(tr - 1.0) > kTolTrace || min_eig < -kTolPsd) {
    std::ostringstream os;
    os.precision(17);
    os << "not a density operator: trace = " << tr << ", minimum eigenvalue = " << min_eig;
    throw ValidationError(os.str());
  }
}

DensityOperator DensityOperator::normalized(const HermitianOperator& psd) {
  const double tr = psd.trace();
  if (!(tr > 0.0)) throw ValidationError("cannot normalize an operator with nonpositive trace");
  return DensityOperator((1.0 / tr) * psd);
}

DensityOperator DensityOperator::maximally_mixed(Index dim) {
  return DensityOperator((1.0 / static_cast<double>(dim)) * HermitianOperator::identity(dim));
}

Projector::Projector(HermitianOperator op) : op_(std::move(op)) {
  const Matrix& p = op_.matrix();
  if (max_abs_entry(p * p - p) > 1e-10) throw ValidationError("operator is not a projector (P^2 != P)");
}

Projector Projector::from_columns(const Matrix& columns, Index dim) {
  if (columns.cols() == 0) return Projector(Unchecked{}, HermitianOperator::zero(dim));
  return Projector(Unchecked{}, HermitianOperator::hermitian_part(columns * columns.adjoint()));
}

Index Projector::rank() const { return static_cast<Index>(std::llround(op_.trace())); }

SpectralDecomposition::SpectralDecomposition(std::vector<double> eigenvalues, Matrix eigenvectors)
    : values_(std::move(eigenvalues)), vectors_(std::move(eigenvectors)) {
  if (values_.empty() || static_cast<Index>(values_.size()) != vectors_.cols()) {
    throw DimensionMismatch("spectral decomposition: eigenvalue/eigenvector count mismatch");
  }
}

double SpectralDecomposition::spectral_norm() const {
  return std::max(std::abs(values_.front()), std::abs(values_.back()));
}

double SpectralDecomposition::zero_tolerance() const {
  return kZeroBand * std::max(1.0, spectral_norm());
}

std::vector<Eigenspace> SpectralDecomposition::eigenspaces() const {
  const double band = kGroupBand * spectral_norm();
  const Index d = dim();
  std::vector<Eigenspace> out;
  Index start = 0;
  while (start < d) {
    Index end = start + 1;
    while (end < d && values_[end - 1] - values_[end] <= band) ++end;
    double mean = 0.0;
    for (Index k = start; k < end; ++k) mean += values_[k];
    mean /= static_cast<double>(end - start);
    out.push_back({mean, Projector::from_columns(vectors_.middleCols(start, end - start), d), end - start});
    start = end;
  }
  return out;
}

HermitianOperator SpectralDecomposition::reconstruct() const {
  Eigen::VectorXd lambda(static_cast<Index>(values_.size()));
  for (std::size_t i = 0; i < values_.size(); ++i) lambda(static_cast<Index>(i)) = values_[i];
  return HermitianOperator::hermitian_part(vectors_ * lambda.asDiagonal() * vectors_.adjoint());
}

Projector SpectralDecomposition::projector(SpectralRegion region) const {
  const double tol = zero_tolerance();
  const Index d = dim();
  Index first = 0;  // eigenvalues are descending: positive, null, negative
  while (first < d && values_[first] > tol) ++first;
  Index last = first;
  while (last < d && values_[last] >= -tol) ++last;
  switch (region) {
    case SpectralRegion::Positive:
      return Projector::from_columns(vectors_.leftCols(first), d);
    case SpectralRegion::NonNegative:
      return Projector::from_columns(vectors_.leftCols(last), d);
    case SpectralRegion::Negative:
      return Projector::from_columns(vectors_.rightCols(d - last), d);
    case SpectralRegion::NonPositive:
      return Projector::from_columns(vectors_.rightCols(d - first), d);
    case SpectralRegion::Null:
      return Projector::from_columns(vectors_.middleCols(first, last - first), d);
  }
  return {};
}

SpectralDecomposition spectral_decompose(const HermitianOperator& a) {
  const Index d = a.dim();
  std::vector<Index> layout = a.block_layout();
  if (layout.empty()) layout.push_back(d);

  std::vector<std::pair<double, Eigen::VectorXcd>> pairs;
  pairs.reserve(static_cast<std::size_t>(d));
  Index offset = 0;
  for (Index size : layout) {
    const Matrix block = a.matrix().block(offset, offset, size, size);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
    if (solver.info() != Eigen::Success) {
      const double residual = (block * solver.eigenvectors() -
                               solver.eigenvectors() * solver.eigenvalues().asDiagonal())
                                  .norm();
      throw ConvergenceError("Hermitian eigensolver did not converge", residual);
    }
    for (Index k = 0; k < size; ++k) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
      v.segment(offset, size) = solver.eigenvectors().col(k);
      pairs.emplace_back(solver.eigenvalues()(k), std::move(v));
    }
    offset += size;
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });

  std::vector<double> values(pairs.size());
  Matrix vectors(d, d);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    values[k] = pairs[k].first;
    vectors.col(static_cast<Index>(k)) = pairs[k].second;
  }
  return SpectralDecomposition(std::move(values), std::move(vectors));
}

Projector spectral_projector(const HermitianOperator& a, SpectralRegion region) {
  return spectral_decompose(a).projector(region);
}

SignPartition sign_partition(const HermitianOperator& a) {
  const SpectralDecomposition sd = spectral_decompose(a);
  Projector plus = sd.projector(SpectralRegion::Positive);
  Projector minus = sd.projector(SpectralRegion::Negative);
  Projector null(Projector::Unchecked{}, HermitianOperator::identity(a.dim()) - plus.op() - minus.op());
  return {std::move(plus), std::move(minus), std::move(null)};
}

HermitianOperator block_diag(std::span<const HermitianOperator> blocks) {
  if (blocks.empty()) throw ValidationError("block_diag needs at least one block");
  Index total = 0;
  std::vector<Index> layout;
  for (const auto& b : blocks) {
    total += b.dim();
    layout.push_back(b.dim());
  }
  Matrix out = Matrix::Zero(total, total);
  Index offset = 0;
  for (const auto& b : blocks) {
    out.block(offset, offset, b.dim(), b.dim()) = b.matrix();
    offset += b.dim();
  }
  if (layout.size() == 1) layout.clear();
  return HermitianOperator(std::move(out), std::move(layout));
}

DensityOperator random_density(Index dim, Index rank, std::mt19937_64& rng) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw ValidationError("random_density: need 1 <= rank <= dim, got dim=" + std::to_string(dim) +
                          " rank=" + std::to_string(rank));
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, rank);
  for (Index j = 0; j < rank; ++j) {
    for (Index i = 0; i < dim; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(HermitianOperator::hermitian_part(rho));
}

DensityOperator random_density(Index dim, Index rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_density(dim, rank, rng);
}

}  // namespace qht
