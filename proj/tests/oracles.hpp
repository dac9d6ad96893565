#pragma once

// Test-only reference computations. Nothing here calls into the spectral
// projector or Neyman-Pearson code paths under test.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

inline Matrix ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = n(rng);
      const double im = n(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

inline Matrix random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
  const Matrix g = ginibre(d, d, rng);
  return (g + g.adjoint()) * 0.5;
}

inline Matrix random_unitary(Eigen::Index d, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(d, d, rng));
  return qr.householderQ() * Matrix::Identity(d, d);
}

/// Random 0 <= T <= I: random eigenbasis, eigenvalues uniform on [0, 1].
inline Matrix random_effect(Eigen::Index d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Matrix v = random_unitary(d, rng);
  Eigen::VectorXd lambda(d);
  for (Eigen::Index i = 0; i < d; ++i) lambda(i) = u(rng);
  return v * lambda.asDiagonal() * v.adjoint();
}

inline double tr_prod(const Matrix& a, const Matrix& b) { return (a * b).trace().real(); }

/// Classical alpha_beta for diagonal states p, q: fractional knapsack on the
/// likelihood ratio p/q (outcomes with q = 0 are accepted for free).
inline double classical_alpha_beta(const std::vector<double>& p, const std::vector<double>& q, double beta) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  auto ratio = [&](std::size_t i) {
    return q[i] == 0.0 ? std::numeric_limits<double>::infinity() : p[i] / q[i];
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ratio(a) > ratio(b); });
  double budget = beta;
  double accepted = 0.0;
  for (std::size_t i : order) {
    if (p[i] == 0.0) continue;
    if (q[i] <= budget) {
      budget -= q[i];
      accepted += p[i];
    } else {
      accepted += p[i] * budget / q[i];
      budget = 0.0;
      break;
    }
  }
  return std::max(0.0, 1.0 - accepted);
}

/// 1 - sum_y max_i p_i tau_i(y, y) for diagonal states.
inline double classical_bayes_error(const std::vector<double>& priors, const std::vector<std::vector<double>>& diag) {
  double success = 0.0;
  for (std::size_t y = 0; y < diag.front().size(); ++y) {
    double best = 0.0;
    for (std::size_t i = 0; i < priors.size(); ++i) best = std::max(best, priors[i] * diag[i][y]);
    success += best;
  }
  return 1.0 - success;
}

inline Matrix qubit_projector(double theta, double phi) {
  Eigen::VectorXcd psi(2);
  psi << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
  return psi * psi.adjoint();
}

/// Grid search over qubit tests T = a P + b P_perp, P = |psi(theta, phi)><psi|.
/// For each direction the two-variable linear program in (a, b) is solved by
/// vertex enumeration.
inline double qubit_grid_alpha_beta(const Matrix& rho0, const Matrix& rho1, double beta, int n_theta, int n_phi) {
  const double pi = std::acos(-1.0);
  double best = 1.0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = pi * i / (n_theta - 1);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2 * pi * j / n_phi;
      const Matrix p = qubit_projector(theta, phi);
      const double s = tr_prod(rho0, p);
      const double r = tr_prod(rho1, p);
      std::vector<std::pair<double, double>> cands{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
      for (double a : {0.0, 1.0})
        if (1 - r > 1e-15) cands.emplace_back(a, (beta - a * r) / (1 - r));
      for (double b : {0.0, 1.0})
        if (r > 1e-15) cands.emplace_back((beta - b * (1 - r)) / r, b);
      for (auto [a, b] : cands) {
        if (a < -1e-15 || a > 1 + 1e-15 || b < -1e-15 || b > 1 + 1e-15) continue;
        a = std::clamp(a, 0.0, 1.0);
        b = std::clamp(b, 0.0, 1.0);
        if (a * r + b * (1 - r) > beta + 1e-15) continue;
        best = std::min(best, 1 - a * s - b * (1 - s));
      }
    }
  }
  return best;
}

/// Grid search of the Bayes error p0 eps_{1|0} + (1 - p0) eps_{0|1} over qubit
/// tests on a (theta, phi, a, b) lattice.
inline double qubit_grid_helstrom(const Matrix& rho0, const Matrix& rho1, double p0, int n_theta, int n_phi,
                                  int n_weight) {
  const double pi = std::acos(-1.0);
  double best = 1.0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = pi * i / (n_theta - 1);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2 * pi * j / n_phi;
      const Matrix p = qubit_projector(theta, phi);
      const double s = tr_prod(rho0, p);
      const double r = tr_prod(rho1, p);
      for (int ia = 0; ia < n_weight; ++ia) {
        const double a = static_cast<double>(ia) / (n_weight - 1);
        for (int ib = 0; ib < n_weight; ++ib) {
          const double b = static_cast<double>(ib) / (n_weight - 1);
          const double e10 = 1 - a * s - b * (1 - s);
          const double e01 = a * r + b * (1 - r);
          best = std::min(best, p0 * e10 + (1 - p0) * e01);
        }
      }
    }
  }
  return best;
}

/// Square-root measurement Pi_i = S^-1/2 p_i tau_i S^-1/2, S = sum_j p_j tau_j
/// (S assumed full rank).
inline std::vector<Matrix> square_root_measurement(const std::vector<double>& priors, const std::vector<Matrix>& states) {
  Matrix s = Matrix::Zero(states.front().rows(), states.front().cols());
  for (std::size_t i = 0; i < states.size(); ++i) s += priors[i] * states[i];
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  const Matrix s_inv_sqrt = es.operatorInverseSqrt();
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < states.size(); ++i) out.push_back(s_inv_sqrt * (priors[i] * states[i]) * s_inv_sqrt);
  return out;
}

/// Trine states |psi_k> = cos(2 pi k / 3)|0> + sin(2 pi k / 3)|1>.
inline std::vector<Matrix> trine() {
  const double pi = std::acos(-1.0);
  std::vector<Matrix> out;
  for (int k = 0; k < 3; ++k) {
    Eigen::VectorXcd psi(2);
    psi << std::cos(2 * pi * k / 3), std::sin(2 * pi * k / 3);
    out.push_back(psi * psi.adjoint());
  }
  return out;
}

}  // namespace oracle
