#pragma once

// Binary quantum hypothesis testing: error pairs, Neyman-Pearson tests,
// the type-I/type-II tradeoff alpha_beta and its spectral lower bound.

#include "qht/operator.hpp"

namespace qht {

/// Two-outcome measurement {T, I - T}; T is the effect that accepts rho0.
class BinaryTest {
 public:
  /// Validates 0 <= T <= I within 1e-10.
  explicit BinaryTest(HermitianOperator effect);
  static BinaryTest identity(Index dim) { return BinaryTest(HermitianOperator::identity(dim)); }
  static BinaryTest zero(Index dim) { return BinaryTest(HermitianOperator::zero(dim)); }

  const HermitianOperator& effect() const { return effect_; }
  HermitianOperator complement() const { return HermitianOperator::identity(effect_.dim()) - effect_; }
  Index dim() const { return effect_.dim(); }

 private:
  HermitianOperator effect_;
};

struct ErrorPair {
  double eps_1_given_0;  // 1 - tr(rho0 T)
  double eps_0_given_1;  // tr(rho1 T)
};

/// T = P+_t + gamma P0_t with the projectors of rho0 - t rho1.
struct NpTest {
  double threshold = 0.0;
  double null_mix = 0.0;  // stored as 0 when the null space is trivial
  BinaryTest test = BinaryTest::zero(1);
  Projector positive;
  Projector negative;
  Projector null;
};

struct AlphaCurvePoint {
  double beta = 0.0;
  double alpha = 0.0;
  NpTest witness;
};

ErrorPair error_pair(const DensityOperator& rho0, const DensityOperator& rho1, const BinaryTest& test);

/// Throws ValidationError for t < 0 or gamma outside [0, 1].
NpTest np_test(const DensityOperator& rho0, const DensityOperator& rho1, double t, double gamma);

/// Smallest eps_{1|0} over all tests with eps_{0|1} <= beta, with an
/// achieving Neyman-Pearson witness.
///
/// t* = inf{t >= 0 : tr(rho1 P+_t) <= beta} is located by bisection
/// (tr(rho1 P+_t) is nonincreasing in t); the null-space mixture gamma then
/// spends the remaining type-II budget. If rho0 has weight outside supp(rho1)
/// and no finite threshold meets beta, the projector onto ker(rho1) is used.
AlphaCurvePoint alpha_beta(const DensityOperator& rho0, const DensityOperator& rho1, double beta);

/// tr(rho0 (P-_t' + P0_t')) - t' beta, a lower bound on alpha_beta for every
/// t' >= 0. May be negative.
double lemma2_lower_bound(const DensityOperator& rho0, const DensityOperator& rho1, double beta,
                          double t_prime);

/// Bayes error of the optimal two-outcome test with priors (p0, 1 - p0):
/// p0 - tr(A {A > 0}), A = p0 rho0 - (1 - p0) rho1.
double helstrom(const DensityOperator& rho0, const DensityOperator& rho1, double p0);

}  // namespace qht
