#pragma once

// M-ary minimum-error discrimination with a dual certificate, the
// Holevo/Yuen-Kennedy-Lax optimality residual, and the two exact
// reformulations of the minimum error: a binary test between block-diagonal
// states, and an information-spectrum maximization.

#include <cstdint>
#include <vector>

#include "qht/binary_test.hpp"
#include "qht/operator.hpp"

namespace qht {

/// Priors p_i and states tau_i of an M-ary hypothesis instance.
class Ensemble {
 public:
  /// Validates p_i >= 0, sum p_i = 1 within 1e-12, M >= 1, common dimension.
  Ensemble(std::vector<double> priors, std::vector<DensityOperator> states);
  static Ensemble uniform(std::vector<DensityOperator> states);

  std::size_t size() const { return states_.size(); }
  Index dim() const { return states_.front().dim(); }
  const std::vector<double>& priors() const { return priors_; }
  const std::vector<DensityOperator>& states() const { return states_; }
  /// p_i tau_i
  HermitianOperator weighted(std::size_t i) const { return priors_[i] * states_[i].op(); }

 private:
  std::vector<double> priors_;
  std::vector<DensityOperator> states_;
};

class Povm {
 public:
  /// Validates Pi_i >= -1e-10 and sum Pi_i = I within 1e-9.
  explicit Povm(std::vector<HermitianOperator> effects);

  std::size_t size() const { return effects_.size(); }
  Index dim() const { return effects_.front().dim(); }
  const std::vector<HermitianOperator>& effects() const { return effects_; }
  const HermitianOperator& operator[](std::size_t i) const { return effects_[i]; }

 private:
  std::vector<HermitianOperator> effects_;
};

struct SolverOptions {
  double tol_gap = 1e-8;
  /// Holevo residual required alongside the gap before stopping.
  double tol_residual = 1e-7;
  int max_iters = 5000;
  int restarts = 5;
  /// Certificate evaluation period, in iterations.
  int check_every = 10;
  std::uint64_t seed = 0;
};

/// Feasible dual point Y = Lambda_h + shift * I >= p_m tau_m for all m.
struct DualCertificate {
  HermitianOperator dual;
  double shift = 0.0;
  double bound = 0.0;  // 1 - tr(Y), a lower bound on the minimum error
};

struct DiscriminationResult {
  double epsilon = 1.0;
  Povm povm;
  /// Hermitian part of Lambda = sum_i p_i tau_i Pi_i.
  HermitianOperator lambda;
  /// Feasibility-repaired dual; equals lambda at an exact optimum.
  HermitianOperator dual;
  /// dual / c0_star
  DensityOperator mu0_star;
  /// tr(dual)
  double c0_star = 0.0;
  double dual_bound = 0.0;
  double gap = 0.0;
  double holevo_residual = 0.0;
  bool certified = false;
  int iterations = 0;
  int restart = 0;
};

struct SpectrumObjective {
  DensityOperator mu0;
  double t = 0.0;
  double value = 0.0;
};

/// 1 - sum_i p_i tr(tau_i Pi_i), clamped to [0, 1].
double average_error(const Ensemble& ensemble, const Povm& povm);

/// sum_i p_i tau_i Pi_i (not Hermitian in general).
Matrix lagrange_operator(const Ensemble& ensemble, const Povm& povm);

DualCertificate repaired_dual(const Ensemble& ensemble, const Povm& povm);

/// Fixed-point iteration Pi_m <- S^-1/2 (p_m tau_m Pi_m p_m tau_m) S^-1/2,
/// started from I/M, stopped once the dual gap and the Holevo residual are
/// within tolerance. Falls back to random restarts; if none certifies the
/// best attempt is returned with certified = false.
DiscriminationResult solve_min_error(const Ensemble& ensemble, const SolverOptions& options = {});

/// max over m of ||(Lambda_h - p_m tau_m) Pi_m||_F and
/// max(0, -lambda_min(Lambda_h - p_m tau_m)), together with ||Lambda - Lambda^dagger||_F.
/// Zero exactly at optimal POVMs.
double check_holevo_conditions(const Ensemble& ensemble, const Povm& povm);

/// T = diag(p_1 tau_1, ..., p_M tau_M)
DensityOperator hypothesis_state(const Ensemble& ensemble);
/// D(mu0) = diag(mu0 / M, ..., mu0 / M)
DensityOperator reference_state(const DensityOperator& mu0, std::size_t count);

/// alpha_{1/M}(T || D(mu0)). Never exceeds the minimum error; equal to it
/// at mu0 = mu0_star.
AlphaCurvePoint theorem1_value(const Ensemble& ensemble, const DensityOperator& mu0);

/// sum_i p_i tr(tau_i {p_i tau_i - t mu0 <= 0}) - t. The threshold t here
/// corresponds to t'/M in the block formulation.
SpectrumObjective theorem2_objective(const Ensemble& ensemble, const DensityOperator& mu0, double t);

/// max_i |tr{p_i tau_i - t mu0 <= 0} - d|; zero when every projector is the identity.
double degeneracy_deviation(const Ensemble& ensemble, const DensityOperator& mu0, double t);

struct VerifyOptions {
  SolverOptions solver;
  int mu0_samples = 20;
  int t_grid = 11;  // equispaced thresholds on [0, 1]
  std::uint64_t seed = 0;
  double tol_theorem = 1e-6;
  double tol_excess = 1e-8;
  double tol_degeneracy = 1e-8;
};

struct VerificationReport {
  std::uint64_t id = 0;
  Index dim = 0;
  std::size_t hypotheses = 0;
  double epsilon = 0.0;
  double gap = 0.0;
  double holevo_residual = 0.0;
  double theorem1_delta = 0.0;
  double theorem2_delta = 0.0;
  double degeneracy_deviation = 0.0;
  /// max over sampled (mu0, t) of both expressions minus epsilon
  double sampled_max_excess = 0.0;
  bool certified = false;
  double wall_time_s = 0.0;

  /// Certified and every check within the tolerances of `options`.
  bool passes(const VerifyOptions& options) const;
};

VerificationReport verify_theorems(const Ensemble& ensemble, const VerifyOptions& options = {});

/// Dirichlet(1) priors and Ginibre states; rank 0 draws each state's rank
/// uniformly from [1, dim]. Deterministic per seed.
Ensemble random_ensemble(Index dim, std::size_t hypotheses, Index rank, std::uint64_t seed);

}  // namespace qht
