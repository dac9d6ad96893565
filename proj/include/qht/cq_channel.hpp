#pragma once

// One-shot classical-quantum channel coding over a fixed codebook: the exact
// error probability, the hypothesis-testing (meta-converse) bound, its
// output-state specialization, and the information-spectrum bound.

#include <cstdint>
#include <string>
#include <vector>

#include "qht/binary_test.hpp"
#include "qht/discrimination.hpp"

namespace qht {

/// A classical-quantum channel restricted to a codebook: message m is sent
/// as input x_m and received as the state W_{x_m}.
class CqCodebookInstance {
 public:
  explicit CqCodebookInstance(std::vector<DensityOperator> outputs, std::vector<std::string> labels = {});

  std::size_t size() const { return outputs_.size(); }
  Index dim() const { return outputs_.front().dim(); }
  const std::vector<DensityOperator>& outputs() const { return outputs_; }
  /// Input labels x_m; empty when the code was given by outputs only.
  const std::vector<std::string>& labels() const { return labels_; }

  /// Equiprobable messages.
  Ensemble ensemble() const { return Ensemble::uniform(outputs_); }
  /// (1/M) sum_m W_{x_m}
  DensityOperator output_state() const;

 private:
  std::vector<DensityOperator> outputs_;
  std::vector<std::string> labels_;
};

/// rho^AB = (1/M) sum_m |m><m| (x) W_{x_m} and its uniform input marginal.
struct JointState {
  DensityOperator rho_ab;
  DensityOperator rho_a;
};

JointState joint_state(const CqCodebookInstance& code);

DiscriminationResult pe_of_code(const CqCodebookInstance& code, const SolverOptions& options = {});

/// alpha_{1/M}(rho^AB || rho^A (x) mu0^B). Computed from the tensor-product
/// reference state and cross-checked against theorem1_value on the uniform
/// ensemble (throws std::logic_error on a mismatch above 1e-10).
AlphaCurvePoint meta_converse(const CqCodebookInstance& code, const DensityOperator& mu0);

/// meta_converse with mu0 fixed to the induced output state.
AlphaCurvePoint wang_renner_bound(const CqCodebookInstance& code);

/// (1/M) sum_m tr(W_m {W_m - t' mu0 <= 0}) - t'/M. Cross-checked against
/// theorem2_objective with t = t'/M (std::logic_error above 1e-12).
double hayashi_nagaoka(const CqCodebookInstance& code, const DensityOperator& mu0, double t_prime);

struct ConverseReport {
  std::uint64_t seed = 0;
  double pe = 0.0;
  double meta_converse_at_mu0star = 0.0;
  double wang_renner = 0.0;
  double hayashi_nagaoka_at_opt = 0.0;
  /// pe - wang_renner
  double slack_wr = 0.0;
  double gap = 0.0;
  bool certified = false;
};

ConverseReport converse_report(const CqCodebookInstance& code, const SolverOptions& options = {},
                               std::uint64_t seed = 0);

struct TightnessConfig {
  Index dim = 2;
  std::size_t codewords = 2;
  /// Output-state rank; 0 draws a rank uniformly from [1, dim] per codeword.
  Index rank = 0;
  std::uint64_t seed = 0;
  std::size_t count = 100;
  SolverOptions solver;
  unsigned jobs = 1;
};

/// Codeword states for instance `seed`; deterministic.
CqCodebookInstance random_code(Index dim, std::size_t codewords, Index rank, std::uint64_t seed);

/// One report per random code, seeds config.seed, config.seed + 1, ...
/// Results are ordered by seed regardless of `jobs`.
std::vector<ConverseReport> tightness_experiment(const TightnessConfig& config);

}  // namespace qht
