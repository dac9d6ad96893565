#include "qht/discrimination.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "qht/errors.hpp"

namespace qht {

namespace {

constexpr double kTolPriorSum = 1e-12;
constexpr double kTolEffectPsd = 1e-10;
constexpr double kTolCompleteness = 1e-9;
constexpr double kPseudoInverseCut = 1e-13;

Matrix herm(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

double max_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(solver.eigenvalues().size() - 1);
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

// Certificate quantities on raw matrices; weighted[m] = p_m tau_m.
struct Certificate {
  double epsilon;
  Matrix dual;
  double shift;
  double bound;
  double gap;
};

Certificate certificate(const std::vector<Matrix>& weighted, const std::vector<Matrix>& effects) {
  const Index d = weighted.front().rows();
  Matrix lambda = Matrix::Zero(d, d);
  double success = 0.0;
  for (std::size_t m = 0; m < weighted.size(); ++m) {
    lambda += weighted[m] * effects[m];
    success += (weighted[m].array() * effects[m].array().conjugate()).sum().real();
  }
  const Matrix lambda_h = herm(lambda);
  double shift = 0.0;
  for (const Matrix& a : weighted) shift = std::max(shift, max_eigenvalue(a - lambda_h));
  Matrix dual = lambda_h + shift * Matrix::Identity(d, d);
  const double epsilon = 1.0 - success;
  const double bound = 1.0 - dual.trace().real();
  return {epsilon, std::move(dual), shift, bound, epsilon - bound};
}

double holevo_residual(const std::vector<Matrix>& weighted, const std::vector<Matrix>& effects) {
  const Index d = weighted.front().rows();
  Matrix lambda = Matrix::Zero(d, d);
  for (std::size_t m = 0; m < weighted.size(); ++m) lambda += weighted[m] * effects[m];
  double residual = (lambda - lambda.adjoint()).norm();
  const Matrix lambda_h = herm(lambda);
  for (std::size_t m = 0; m < weighted.size(); ++m) {
    const Matrix z = lambda_h - weighted[m];
    residual = std::max(residual, (z * effects[m]).norm());
    residual = std::max(residual, std::max(0.0, -min_eigenvalue(z)));
  }
  return residual;
}

struct Attempt {
  std::vector<Matrix> effects;
  double gap = std::numeric_limits<double>::infinity();
  double epsilon = 1.0;
  double residual = std::numeric_limits<double>::infinity();
  bool certified = false;
  int iterations = 0;
  int restart = 0;
};

// Square root of a PSD matrix; eigenvalues below zero are roundoff and clamp to 0.
Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm(m));
  const Eigen::VectorXd root = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * root.asDiagonal() * solver.eigenvectors().adjoint();
}

// Pi_m <- S^-1/2 Q_m S^-1/2 + K / M, Q_m = A_m Pi_m A_m, S = sum Q_m, K = ker(S).
// Each Q_m and each update is formed as a Gram product B B^dagger so that effects
// stay PSD when S is nearly singular.
void fixed_point_step(const std::vector<Matrix>& weighted, std::vector<Matrix>& effects) {
  const Index d = weighted.front().rows();
  const auto count = static_cast<double>(weighted.size());
  std::vector<Matrix> factor(weighted.size());
  Matrix s = Matrix::Zero(d, d);
  for (std::size_t m = 0; m < weighted.size(); ++m) {
    factor[m] = weighted[m] * psd_sqrt(effects[m]);
    s += factor[m] * factor[m].adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm(s));
  const Eigen::VectorXd& w = solver.eigenvalues();
  const double cut = kPseudoInverseCut * std::max(w(d - 1), std::numeric_limits<double>::min());
  Eigen::VectorXd inv_sqrt(d);
  Eigen::VectorXd kernel(d);
  for (Index k = 0; k < d; ++k) {
    const bool in_support = w(k) > cut;
    inv_sqrt(k) = in_support ? 1.0 / std::sqrt(w(k)) : 0.0;
    kernel(k) = in_support ? 0.0 : 1.0 / count;
  }
  const Matrix& v = solver.eigenvectors();
  const Matrix s_inv_sqrt = v * inv_sqrt.asDiagonal() * v.adjoint();
  const Matrix kernel_share = v * kernel.asDiagonal() * v.adjoint();
  Matrix total = Matrix::Zero(d, d);
  for (std::size_t m = 0; m < weighted.size(); ++m) {
    const Matrix b = s_inv_sqrt * factor[m];
    effects[m] = herm(b * b.adjoint()) + kernel_share;
    total += effects[m];
  }
  // total = I up to roundoff amplified by 1/lambda_min(S); congruence by
  // total^-1/2 restores completeness exactly and keeps each effect PSD.
  Eigen::SelfAdjointEigenSolver<Matrix> completion(herm(total));
  const Matrix fix = completion.operatorInverseSqrt();
  for (auto& e : effects) e = herm(fix * e * fix);
}

Attempt run_attempt(const std::vector<Matrix>& weighted, std::vector<Matrix> effects,
                    const SolverOptions& options, int restart) {
  Attempt out;
  out.restart = restart;
  const int period = std::max(1, options.check_every);
  for (int k = 1; k <= options.max_iters; ++k) {
    fixed_point_step(weighted, effects);
    if (k % period != 0 && k != options.max_iters) continue;
    const Certificate cert = certificate(weighted, effects);
    out.iterations = k;
    if (cert.gap <= options.tol_gap) {
      const double residual = holevo_residual(weighted, effects);
      if (residual <= options.tol_residual) {
        out.gap = cert.gap;
        out.epsilon = cert.epsilon;
        out.residual = residual;
        out.certified = true;
        out.effects = std::move(effects);
        return out;
      }
    }
  }
  const Certificate cert = certificate(weighted, effects);
  out.gap = cert.gap;
  out.epsilon = cert.epsilon;
  out.residual = holevo_residual(weighted, effects);
  out.effects = std::move(effects);
  return out;
}

std::vector<Matrix> uniform_start(std::size_t count, Index d) {
  return std::vector<Matrix>(count, Matrix::Identity(d, d) / static_cast<double>(count));
}

std::vector<Matrix> random_start(std::size_t count, Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Matrix> g(count);
  Matrix s = Matrix::Zero(d, d);
  for (auto& gm : g) {
    Matrix x(d, d);
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        const double re = normal(rng);
        const double im = normal(rng);
        x(i, j) = Complex(re, im);
      }
    }
    gm = x * x.adjoint();
    s += gm;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm(s));
  const Matrix s_inv_sqrt = solver.operatorInverseSqrt();
  for (auto& gm : g) gm = herm(s_inv_sqrt * gm * s_inv_sqrt);
  return g;
}

bool better(const Attempt& a, const Attempt& b) {
  if (a.certified != b.certified) return a.certified;
  if (a.certified) return a.epsilon < b.epsilon;
  return a.gap < b.gap;
}

void require_matching(const Ensemble& ensemble, const Povm& povm) {
  if (povm.size() != ensemble.size()) {
    throw DimensionMismatch("POVM has " + std::to_string(povm.size()) + " effects, ensemble has " +
                            std::to_string(ensemble.size()) + " hypotheses");
  }
  if (povm.dim() != ensemble.dim()) throw DimensionMismatch("POVM and ensemble dimensions differ");
}

void require_state_dim(const Ensemble& ensemble, const DensityOperator& mu0) {
  if (mu0.dim() != ensemble.dim()) {
    throw DimensionMismatch("mu0 has dimension " + std::to_string(mu0.dim()) + ", ensemble has " +
                            std::to_string(ensemble.dim()));
  }
}

std::vector<Matrix> weighted_matrices(const Ensemble& ensemble) {
  std::vector<Matrix> out;
  out.reserve(ensemble.size());
  for (std::size_t i = 0; i < ensemble.size(); ++i) out.push_back(ensemble.weighted(i).matrix());
  return out;
}

std::vector<Matrix> effect_matrices(const Povm& povm) {
  std::vector<Matrix> out;
  out.reserve(povm.size());
  for (const auto& e : povm.effects()) out.push_back(e.matrix());
  return out;
}

}  // namespace

Ensemble::Ensemble(std::vector<double> priors, std::vector<DensityOperator> states)
    : priors_(std::move(priors)), states_(std::move(states)) {
  if (states_.empty()) throw ValidationError("ensemble needs at least one hypothesis");
  if (priors_.size() != states_.size()) {
    throw DimensionMismatch("ensemble has " + std::to_string(priors_.size()) + " priors and " +
                            std::to_string(states_.size()) + " states");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < priors_.size(); ++i) {
    if (!(priors_[i] >= 0.0)) throw ValidationError("prior " + std::to_string(i) + " is negative");
    total += priors_[i];
  }
  if (std::abs(total - 1.0) > kTolPriorSum) {
    throw ValidationError("priors sum to " + std::to_string(total) + ", expected 1");
  }
  for (std::size_t i = 1; i < states_.size(); ++i) {
    if (states_[i].dim() != states_.front().dim()) {
      throw DimensionMismatch("state " + std::to_string(i) + " has dimension " +
                              std::to_string(states_[i].dim()) + ", expected " +
                              std::to_string(states_.front().dim()));
    }
  }
}

Ensemble Ensemble::uniform(std::vector<DensityOperator> states) {
  const std::size_t m = states.size();
  return Ensemble(std::vector<double>(m, 1.0 / static_cast<double>(m)), std::move(states));
}

Povm::Povm(std::vector<HermitianOperator> effects) : effects_(std::move(effects)) {
  if (effects_.empty()) throw ValidationError("POVM needs at least one effect");
  const Index d = effects_.front().dim();
  Matrix total = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < effects_.size(); ++i) {
    if (effects_[i].dim() != d) throw DimensionMismatch("POVM effects have different dimensions");
    if (spectral_decompose(effects_[i]).min_eigenvalue() < -kTolEffectPsd) {
      throw ValidationError("POVM effect " + std::to_string(i) + " is not positive semidefinite");
    }
    total += effects_[i].matrix();
  }
  if ((total - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kTolCompleteness) {
    throw ValidationError("POVM effects do not sum to the identity");
  }
}

double average_error(const Ensemble& ensemble, const Povm& povm) {
  require_matching(ensemble, povm);
  double success = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) success += trace_product(ensemble.weighted(i), povm[i]);
  return std::clamp(1.0 - success, 0.0, 1.0);
}

Matrix lagrange_operator(const Ensemble& ensemble, const Povm& povm) {
  require_matching(ensemble, povm);
  Matrix lambda = Matrix::Zero(ensemble.dim(), ensemble.dim());
  for (std::size_t i = 0; i < ensemble.size(); ++i) lambda += ensemble.weighted(i).matrix() * povm[i].matrix();
  return lambda;
}

DualCertificate repaired_dual(const Ensemble& ensemble, const Povm& povm) {
  require_matching(ensemble, povm);
  Certificate c = certificate(weighted_matrices(ensemble), effect_matrices(povm));
  return {HermitianOperator::hermitian_part(c.dual), c.shift, c.bound};
}

double check_holevo_conditions(const Ensemble& ensemble, const Povm& povm) {
  require_matching(ensemble, povm);
  return holevo_residual(weighted_matrices(ensemble), effect_matrices(povm));
}

DiscriminationResult solve_min_error(const Ensemble& ensemble, const SolverOptions& options) {
  if (!(options.tol_gap > 0.0) || !(options.tol_residual > 0.0) || options.max_iters < 1 ||
      options.restarts < 0) {
    throw ValidationError("solver tolerances and iteration budget must be positive");
  }
  const std::vector<Matrix> weighted = weighted_matrices(ensemble);
  const std::size_t count = ensemble.size();
  const Index d = ensemble.dim();

  Attempt best = run_attempt(weighted, uniform_start(count, d), options, 0);
  for (int r = 1; r <= options.restarts && !best.certified; ++r) {
    std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(r));
    Attempt next = run_attempt(weighted, random_start(count, d, rng), options, r);
    if (better(next, best)) best = std::move(next);
  }

  std::vector<HermitianOperator> effects;
  effects.reserve(count);
  for (const Matrix& e : best.effects) effects.push_back(HermitianOperator::hermitian_part(e));
  Povm povm(std::move(effects));

  const double epsilon = average_error(ensemble, povm);
  DualCertificate cert = repaired_dual(ensemble, povm);
  HermitianOperator lambda = HermitianOperator::hermitian_part(lagrange_operator(ensemble, povm));
  const double c0 = cert.dual.trace();
  DensityOperator mu0 = DensityOperator::normalized(cert.dual);
  const double bound = std::clamp(cert.bound, 0.0, 1.0);

  DiscriminationResult result{epsilon,
                              std::move(povm),
                              std::move(lambda),
                              std::move(cert.dual),
                              std::move(mu0),
                              c0,
                              bound,
                              std::max(0.0, epsilon - bound),
                              best.residual,
                              best.certified,
                              best.iterations,
                              best.restart};
  return result;
}

DensityOperator hypothesis_state(const Ensemble& ensemble) {
  std::vector<HermitianOperator> blocks;
  blocks.reserve(ensemble.size());
  for (std::size_t i = 0; i < ensemble.size(); ++i) blocks.push_back(ensemble.weighted(i));
  return DensityOperator(block_diag(blocks));
}

DensityOperator reference_state(const DensityOperator& mu0, std::size_t count) {
  if (count == 0) throw ValidationError("reference state needs at least one block");
  std::vector<HermitianOperator> blocks(count, (1.0 / static_cast<double>(count)) * mu0.op());
  return DensityOperator(block_diag(blocks));
}

AlphaCurvePoint theorem1_value(const Ensemble& ensemble, const DensityOperator& mu0) {
  require_state_dim(ensemble, mu0);
  return alpha_beta(hypothesis_state(ensemble), reference_state(mu0, ensemble.size()),
                    1.0 / static_cast<double>(ensemble.size()));
}

SpectrumObjective theorem2_objective(const Ensemble& ensemble, const DensityOperator& mu0, double t) {
  require_state_dim(ensemble, mu0);
  if (!(t >= 0.0)) throw ValidationError("threshold t must be nonnegative");
  double value = -t;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const HermitianOperator weighted = ensemble.weighted(i);
    value += trace_product(weighted, nonpositive_projector(weighted - t * mu0.op()));
  }
  return {mu0, t, value};
}

double degeneracy_deviation(const Ensemble& ensemble, const DensityOperator& mu0, double t) {
  require_state_dim(ensemble, mu0);
  double worst = 0.0;
  const auto d = static_cast<double>(ensemble.dim());
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const Projector p = nonpositive_projector(ensemble.weighted(i) - t * mu0.op());
    worst = std::max(worst, std::abs(p.op().trace() - d));
  }
  return worst;
}

bool VerificationReport::passes(const VerifyOptions& options) const {
  return certified && theorem1_delta <= options.tol_theorem && theorem2_delta <= options.tol_theorem &&
         degeneracy_deviation <= options.tol_degeneracy && sampled_max_excess <= options.tol_excess;
}

VerificationReport verify_theorems(const Ensemble& ensemble, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const DiscriminationResult r = solve_min_error(ensemble, options.solver);

  VerificationReport report;
  report.dim = ensemble.dim();
  report.hypotheses = ensemble.size();
  report.epsilon = r.epsilon;
  report.gap = r.gap;
  report.holevo_residual = r.holevo_residual;
  report.certified = r.certified;
  report.theorem1_delta = std::abs(theorem1_value(ensemble, r.mu0_star).alpha - r.epsilon);
  report.theorem2_delta = std::abs(theorem2_objective(ensemble, r.mu0_star, r.c0_star).value - r.epsilon);
  report.degeneracy_deviation = degeneracy_deviation(ensemble, r.mu0_star, r.c0_star);

  std::mt19937_64 rng(options.seed);
  const Index d = ensemble.dim();
  std::uniform_int_distribution<Index> rank_dist(1, d);
  double excess = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < options.mu0_samples; ++k) {
    const Index rank = rank_dist(rng);
    const DensityOperator mu0 = random_density(d, rank, rng);
    excess = std::max(excess, theorem1_value(ensemble, mu0).alpha - r.epsilon);
    for (int j = 0; j < options.t_grid; ++j) {
      const double t = options.t_grid > 1 ? static_cast<double>(j) / (options.t_grid - 1) : 0.0;
      excess = std::max(excess, theorem2_objective(ensemble, mu0, t).value - r.epsilon);
    }
  }
  report.sampled_max_excess = std::isfinite(excess) ? excess : 0.0;
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Ensemble random_ensemble(Index dim, std::size_t hypotheses, Index rank, std::uint64_t seed) {
  if (hypotheses == 0) throw ValidationError("random ensemble needs at least one hypothesis");
  if (dim < 1 || rank < 0 || rank > dim) throw ValidationError("random ensemble needs 0 <= rank <= dim");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exponential(1.0);
  std::uniform_int_distribution<Index> rank_dist(1, dim);
  std::vector<double> priors(hypotheses);
  double total = 0.0;
  for (auto& p : priors) total += (p = exponential(rng));
  for (auto& p : priors) p /= total;
  std::vector<DensityOperator> states;
  states.reserve(hypotheses);
  for (std::size_t i = 0; i < hypotheses; ++i) {
    const Index r = rank > 0 ? rank : rank_dist(rng);
    states.push_back(random_density(dim, r, rng));
  }
  return Ensemble(std::move(priors), std::move(states));
}

}  // namespace qht
