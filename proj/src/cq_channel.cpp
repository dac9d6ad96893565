#include "qht/cq_channel.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "qht/errors.hpp"

namespace qht {

namespace {

constexpr double kTolMetaIdentity = 1e-10;
constexpr double kTolSpectrumIdentity = 1e-12;

void require_output_dim(const CqCodebookInstance& code, const DensityOperator& mu0) {
  if (mu0.dim() != code.dim()) {
    throw DimensionMismatch("mu0 has dimension " + std::to_string(mu0.dim()) + ", channel output has " +
                            std::to_string(code.dim()));
  }
}

}  // namespace

CqCodebookInstance::CqCodebookInstance(std::vector<DensityOperator> outputs, std::vector<std::string> labels)
    : outputs_(std::move(outputs)), labels_(std::move(labels)) {
  if (outputs_.empty()) throw ValidationError("codebook needs at least one codeword");
  for (std::size_t m = 1; m < outputs_.size(); ++m) {
    if (outputs_[m].dim() != outputs_.front().dim()) {
      throw DimensionMismatch("output " + std::to_string(m) + " has dimension " +
                              std::to_string(outputs_[m].dim()) + ", expected " +
                              std::to_string(outputs_.front().dim()));
    }
  }
  if (!labels_.empty() && labels_.size() != outputs_.size()) {
    throw DimensionMismatch("codebook has " + std::to_string(labels_.size()) + " labels for " +
                            std::to_string(outputs_.size()) + " outputs");
  }
}

DensityOperator CqCodebookInstance::output_state() const {
  HermitianOperator sum = HermitianOperator::zero(dim());
  for (const auto& w : outputs_) sum += w.op();
  return DensityOperator((1.0 / static_cast<double>(size())) * sum);
}

JointState joint_state(const CqCodebookInstance& code) {
  const double weight = 1.0 / static_cast<double>(code.size());
  std::vector<HermitianOperator> blocks;
  blocks.reserve(code.size());
  for (const auto& w : code.outputs()) blocks.push_back(weight * w.op());
  const std::vector<double> marginal(code.size(), weight);
  return {DensityOperator(block_diag(blocks)), DensityOperator(HermitianOperator::diagonal(marginal))};
}

DiscriminationResult pe_of_code(const CqCodebookInstance& code, const SolverOptions& options) {
  return solve_min_error(code.ensemble(), options);
}

AlphaCurvePoint meta_converse(const CqCodebookInstance& code, const DensityOperator& mu0) {
  require_output_dim(code, mu0);
  const JointState joint = joint_state(code);
  const DensityOperator reference(kron(joint.rho_a.op(), mu0.op()));
  AlphaCurvePoint point = alpha_beta(joint.rho_ab, reference, 1.0 / static_cast<double>(code.size()));

  const double via_ensemble = theorem1_value(code.ensemble(), mu0).alpha;
  if (std::abs(via_ensemble - point.alpha) > kTolMetaIdentity) {
    std::ostringstream os;
    os.precision(17);
    os << "meta-converse " << point.alpha << " differs from the block-diagonal binary test " << via_ensemble;
    throw std::logic_error(os.str());
  }
  return point;
}

AlphaCurvePoint wang_renner_bound(const CqCodebookInstance& code) {
  return meta_converse(code, code.output_state());
}

double hayashi_nagaoka(const CqCodebookInstance& code, const DensityOperator& mu0, double t_prime) {
  require_output_dim(code, mu0);
  if (!(t_prime >= 0.0)) throw ValidationError("t' must be nonnegative");
  const auto m = static_cast<double>(code.size());
  double value = -t_prime / m;
  for (const auto& w : code.outputs()) {
    value += trace_product(w, nonpositive_projector(w.op() - t_prime * mu0.op())) / m;
  }

  const double via_ensemble = theorem2_objective(code.ensemble(), mu0, t_prime / m).value;
  if (std::abs(via_ensemble - value) > kTolSpectrumIdentity) {
    std::ostringstream os;
    os.precision(17);
    os << "information-spectrum bound " << value << " differs from the ensemble objective " << via_ensemble;
    throw std::logic_error(os.str());
  }
  return value;
}

ConverseReport converse_report(const CqCodebookInstance& code, const SolverOptions& options, std::uint64_t seed) {
  const DiscriminationResult pe = pe_of_code(code, options);
  ConverseReport report;
  report.seed = seed;
  report.pe = pe.epsilon;
  report.meta_converse_at_mu0star = meta_converse(code, pe.mu0_star).alpha;
  report.wang_renner = wang_renner_bound(code).alpha;
  report.hayashi_nagaoka_at_opt =
      hayashi_nagaoka(code, pe.mu0_star, static_cast<double>(code.size()) * pe.c0_star);
  report.slack_wr = pe.epsilon - report.wang_renner;
  report.gap = pe.gap;
  report.certified = pe.certified;
  return report;
}

CqCodebookInstance random_code(Index dim, std::size_t codewords, Index rank, std::uint64_t seed) {
  if (codewords == 0) throw ValidationError("random code needs at least one codeword");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> rank_dist(1, dim);
  std::vector<DensityOperator> outputs;
  outputs.reserve(codewords);
  for (std::size_t m = 0; m < codewords; ++m) {
    const Index r = rank > 0 ? rank : rank_dist(rng);
    outputs.push_back(random_density(dim, r, rng));
  }
  return CqCodebookInstance(std::move(outputs));
}

std::vector<ConverseReport> tightness_experiment(const TightnessConfig& config) {
  std::vector<std::optional<ConverseReport>> slots(config.count);
  detail::parallel_for(config.count, config.jobs, [&](std::size_t i) {
    const std::uint64_t seed = config.seed + i;
    slots[i] = converse_report(random_code(config.dim, config.codewords, config.rank, seed), config.solver, seed);
  });
  std::vector<ConverseReport> out;
  out.reserve(config.count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace qht
