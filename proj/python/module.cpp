#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "qht/binary_test.hpp"
#include "qht/cq_channel.hpp"
#include "qht/discrimination.hpp"
#include "qht/errors.hpp"

namespace py = pybind11;
using namespace py::literals;

namespace {

qht::DensityOperator density(const qht::Matrix& m) { return qht::DensityOperator(qht::HermitianOperator(m)); }

std::vector<qht::DensityOperator> densities(const std::vector<qht::Matrix>& ms) {
  std::vector<qht::DensityOperator> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(density(m));
  return out;
}

qht::Ensemble ensemble(const std::vector<double>& priors, const std::vector<qht::Matrix>& states) {
  return qht::Ensemble(priors, densities(states));
}

qht::SolverOptions solver_options(double tol_gap, double tol_residual, int max_iters, int restarts,
                                  std::uint64_t seed) {
  qht::SolverOptions o;
  o.tol_gap = tol_gap;
  o.tol_residual = tol_residual;
  o.max_iters = max_iters;
  o.restarts = restarts;
  o.seed = seed;
  return o;
}

py::dict to_dict(const qht::AlphaCurvePoint& p) {
  return py::dict("beta"_a = p.beta, "alpha"_a = p.alpha, "threshold"_a = p.witness.threshold,
                  "null_mix"_a = p.witness.null_mix, "test"_a = p.witness.test.effect().matrix());
}

py::dict to_dict(const qht::DiscriminationResult& r) {
  std::vector<qht::Matrix> povm;
  for (const auto& e : r.povm.effects()) povm.push_back(e.matrix());
  return py::dict("epsilon"_a = r.epsilon, "povm"_a = povm, "lambda_"_a = r.lambda.matrix(),
                  "mu0_star"_a = r.mu0_star.matrix(), "c0_star"_a = r.c0_star, "dual_bound"_a = r.dual_bound,
                  "gap"_a = r.gap, "holevo_residual"_a = r.holevo_residual, "certified"_a = r.certified,
                  "iterations"_a = r.iterations, "restart"_a = r.restart);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum hypothesis testing core";

  auto error = py::register_exception<qht::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<qht::ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<qht::DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
  py::register_exception<qht::ConvergenceError>(m, "ConvergenceError", error.ptr());

  m.def(
      "random_density",
      [](qht::Index dim, qht::Index rank, std::uint64_t seed) { return qht::random_density(dim, rank, seed).matrix(); },
      "Ginibre density matrix of the given rank", "dim"_a, "rank"_a, "seed"_a = 0);

  m.def(
      "helstrom", [](const qht::Matrix& rho0, const qht::Matrix& rho1,
                     double p0) { return qht::helstrom(density(rho0), density(rho1), p0); },
      "Minimum Bayes error of a two-outcome test", "rho0"_a, "rho1"_a, "p0"_a = 0.5);

  m.def(
      "alpha_beta",
      [](const qht::Matrix& rho0, const qht::Matrix& rho1, double beta) {
        return to_dict(qht::alpha_beta(density(rho0), density(rho1), beta));
      },
      "Smallest type-I error with type-II error at most beta, with its optimal test", "rho0"_a, "rho1"_a, "beta"_a);

  m.def(
      "lemma2_lower_bound",
      [](const qht::Matrix& rho0, const qht::Matrix& rho1, double beta, double t_prime) {
        return qht::lemma2_lower_bound(density(rho0), density(rho1), beta, t_prime);
      },
      "tr(rho0 {rho0 - t' rho1 <= 0}) - t' beta", "rho0"_a, "rho1"_a, "beta"_a, "t_prime"_a);

  m.def(
      "solve_min_error",
      [](const std::vector<double>& priors, const std::vector<qht::Matrix>& states, double tol_gap,
         double tol_residual, int max_iters, int restarts, std::uint64_t seed) {
        return to_dict(qht::solve_min_error(ensemble(priors, states),
                                            solver_options(tol_gap, tol_residual, max_iters, restarts, seed)));
      },
      "Certified minimum-error POVM", "priors"_a, "states"_a, "tol_gap"_a = 1e-8, "tol_residual"_a = 1e-7,
      "max_iters"_a = 5000, "restarts"_a = 5, "seed"_a = 0);

  m.def(
      "theorem1_value",
      [](const std::vector<double>& priors, const std::vector<qht::Matrix>& states, const qht::Matrix& mu0) {
        return qht::theorem1_value(ensemble(priors, states), density(mu0)).alpha;
      },
      "Binary-test lower bound on the minimum error for the reference state mu0", "priors"_a, "states"_a, "mu0"_a);

  m.def(
      "theorem2_objective",
      [](const std::vector<double>& priors, const std::vector<qht::Matrix>& states, const qht::Matrix& mu0, double t) {
        return qht::theorem2_objective(ensemble(priors, states), density(mu0), t).value;
      },
      "Information-spectrum lower bound on the minimum error", "priors"_a, "states"_a, "mu0"_a, "t"_a);

  m.def(
      "verify_theorems",
      [](const std::vector<double>& priors, const std::vector<qht::Matrix>& states, int mu0_samples,
         std::uint64_t seed) {
        qht::VerifyOptions options;
        options.mu0_samples = mu0_samples;
        options.seed = seed;
        options.solver.seed = seed;
        const qht::VerificationReport r = qht::verify_theorems(ensemble(priors, states), options);
        return py::dict("epsilon"_a = r.epsilon, "gap"_a = r.gap, "holevo_residual"_a = r.holevo_residual,
                        "theorem1_delta"_a = r.theorem1_delta, "theorem2_delta"_a = r.theorem2_delta,
                        "degeneracy_deviation"_a = r.degeneracy_deviation,
                        "sampled_max_excess"_a = r.sampled_max_excess, "certified"_a = r.certified,
                        "passes"_a = r.passes(options));
      },
      "Solve, then check both exact lower-bound expressions", "priors"_a, "states"_a, "mu0_samples"_a = 20,
      "seed"_a = 0);

  m.def(
      "pe_of_code",
      [](const std::vector<qht::Matrix>& outputs) {
        return to_dict(qht::pe_of_code(qht::CqCodebookInstance(densities(outputs))));
      },
      "Exact error probability of a codebook under optimal decoding", "outputs"_a);

  m.def(
      "meta_converse",
      [](const std::vector<qht::Matrix>& outputs, const qht::Matrix& mu0) {
        return qht::meta_converse(qht::CqCodebookInstance(densities(outputs)), density(mu0)).alpha;
      },
      "Hypothesis-testing converse bound for the reference output state mu0", "outputs"_a, "mu0"_a);

  m.def(
      "wang_renner_bound",
      [](const std::vector<qht::Matrix>& outputs) {
        return qht::wang_renner_bound(qht::CqCodebookInstance(densities(outputs))).alpha;
      },
      "Converse bound with mu0 set to the code's average output state", "outputs"_a);

  m.def(
      "hayashi_nagaoka",
      [](const std::vector<qht::Matrix>& outputs, const qht::Matrix& mu0, double t_prime) {
        return qht::hayashi_nagaoka(qht::CqCodebookInstance(densities(outputs)), density(mu0), t_prime);
      },
      "Information-spectrum converse bound", "outputs"_a, "mu0"_a, "t_prime"_a);
}
