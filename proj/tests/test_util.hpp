#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "qht/operator.hpp"

namespace qht::testing {

inline DensityOperator state(const Matrix& m) { return DensityOperator(HermitianOperator(m)); }

inline DensityOperator diag_state(std::vector<double> values) {
  return DensityOperator(HermitianOperator::diagonal(values));
}

inline DensityOperator pure(std::initializer_list<Complex> amplitudes) {
  Eigen::VectorXcd psi(static_cast<Index>(amplitudes.size()));
  Index i = 0;
  for (Complex a : amplitudes) psi(i++) = a;
  psi.normalize();
  return state(psi * psi.adjoint());
}

inline DensityOperator ket0() { return pure({1.0, 0.0}); }
inline DensityOperator ket1() { return pure({0.0, 1.0}); }
inline DensityOperator ket_plus() { return pure({1.0, 1.0}); }

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qht::testing
