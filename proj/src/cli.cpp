#include "qht/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "parallel.hpp"
#include "qht/binary_test.hpp"
#include "qht/cq_channel.hpp"
#include "qht/errors.hpp"
#include "qht/io.hpp"

namespace qht::cli {

namespace {

constexpr double kTolBoundTightness = 1e-6;
constexpr double kTolConverse = 1e-9;

io::TableFormat table_format(OutputFormat f) {
  return f == OutputFormat::Csv ? io::TableFormat::Csv : io::TableFormat::Jsonl;
}

void emit_table(std::ostream& out, const std::vector<io::Record>& records, OutputFormat format) {
  const io::TableFormat table = table_format(format);
  if (table == io::TableFormat::Csv && !records.empty()) io::write_csv_header(out, records.front());
  for (const auto& r : records) io::write_record(out, r, table);
}

void emit_metadata(std::ostream& out, std::size_t records, double wall_time_s, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    out << "# records=" << records << " wall_time_s=" << io::format_double(wall_time_s) << '\n';
  } else {
    out << "{\"meta\":{\"records\":" << records << ",\"wall_time_s\":" << io::format_double(wall_time_s)
        << "}}\n";
  }
}

int run_binary_test(const RunConfig& config, std::ostream& out) {
  const DensityOperator rho0 = io::load_density(config.rho0_path);
  const DensityOperator rho1 = io::load_density(config.rho1_path);
  std::vector<double> betas;
  if (config.beta) {
    betas.push_back(*config.beta);
  } else {
    for (std::size_t k = 0; k < config.beta_grid; ++k) {
      betas.push_back(config.beta_grid == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(config.beta_grid - 1));
    }
  }
  std::vector<io::Record> records;
  for (double beta : betas) records.push_back(io::to_record(alpha_beta(rho0, rho1, beta)));
  emit_table(out, records, config.format);
  return kExitOk;
}

int run_discriminate(const RunConfig& config, std::ostream& out) {
  const Ensemble ensemble = io::load_ensemble(config.ensemble_path);
  const DiscriminationResult result = solve_min_error(ensemble, config.solver);
  out << io::dump(io::to_json(result)) << '\n';
  return result.certified ? kExitOk : kExitNotCertified;
}

int run_verify(const RunConfig& config, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t count = config.generator ? config.generator->count : 1;
  std::optional<Ensemble> from_file;
  if (!config.generator) from_file.emplace(io::load_ensemble(config.ensemble_path));

  VerifyOptions base;
  base.solver = config.solver;
  base.mu0_samples = config.mu0_samples;

  std::vector<std::optional<VerificationReport>> slots(count);
  detail::parallel_for(count, config.jobs, [&](std::size_t i) {
    const std::uint64_t id = config.generator ? config.generator->seed + i : 0;
    VerifyOptions options = base;
    options.seed = id;
    options.solver.seed = id;
    VerificationReport report =
        config.generator ? verify_theorems(random_ensemble(config.generator->dim, config.generator->hypotheses,
                                                           config.generator->rank, id),
                                           options)
                         : verify_theorems(*from_file, options);
    report.id = id;
    slots[i] = report;
  });

  bool all_pass = true;
  std::vector<io::Record> records;
  for (const auto& s : slots) {
    all_pass = all_pass && s->passes(base);
    records.push_back(io::to_record(*s));
  }
  emit_table(out, records, config.format);
  emit_metadata(out, records.size(),
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), config.format);
  return all_pass ? kExitOk : kExitNotCertified;
}

int run_channel(const RunConfig& config, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<ConverseReport> reports;
  if (config.generator) {
    TightnessConfig tc;
    tc.dim = config.generator->dim;
    tc.codewords = config.generator->hypotheses;
    tc.rank = config.generator->rank;
    tc.seed = config.generator->seed;
    tc.count = config.generator->count;
    tc.solver = config.solver;
    tc.jobs = config.jobs;
    reports = tightness_experiment(tc);
  } else {
    reports.push_back(converse_report(io::load_code(config.code_path), config.solver, 0));
  }

  bool all_pass = true;
  std::vector<io::Record> records;
  for (const auto& r : reports) {
    all_pass = all_pass && r.certified && std::abs(r.meta_converse_at_mu0star - r.pe) <= kTolBoundTightness &&
               std::abs(r.hayashi_nagaoka_at_opt - r.pe) <= kTolBoundTightness &&
               r.wang_renner <= r.pe + kTolConverse;
    records.push_back(io::to_record(r));
  }
  emit_table(out, records, config.format);
  emit_metadata(out, records.size(),
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), config.format);
  return all_pass ? kExitOk : kExitNotCertified;
}

}  // namespace

void validate(const RunConfig& config) {
  const SolverOptions& s = config.solver;
  if (!(s.tol_gap > 0.0) || !(s.tol_residual > 0.0)) throw ValidationError("tolerances must be positive");
  if (s.max_iters < 1) throw ValidationError("--max-iters must be positive");
  if (s.restarts < 0) throw ValidationError("--restarts must be nonnegative");
  if (config.mu0_samples < 0) throw ValidationError("--samples must be nonnegative");
  if (config.jobs < 1) throw ValidationError("--jobs must be positive");

  switch (config.subcommand) {
    case Subcommand::BinaryTest:
      if (config.rho0_path.empty() || config.rho1_path.empty()) {
        throw ValidationError("binary-test needs --rho0 and --rho1");
      }
      if (config.beta.has_value() == (config.beta_grid > 0)) {
        throw ValidationError("binary-test needs exactly one of --beta or --beta-grid");
      }
      if (config.beta && !(*config.beta >= 0.0 && *config.beta <= 1.0)) {
        throw ValidationError("--beta must lie in [0, 1]");
      }
      break;
    case Subcommand::Discriminate:
      if (config.ensemble_path.empty()) throw ValidationError("discriminate needs --ensemble");
      break;
    case Subcommand::Verify:
      if (config.ensemble_path.empty() == !config.generator.has_value()) {
        throw ValidationError("verify needs exactly one input source: --ensemble or generator flags");
      }
      break;
    case Subcommand::Channel:
      if (config.code_path.empty() == !config.generator.has_value()) {
        throw ValidationError("channel needs exactly one input source: --code or --random");
      }
      break;
  }
  if (config.generator) {
    const Generator& g = *config.generator;
    if (g.dim < 1 || g.hypotheses < 1 || g.count < 1) {
      throw ValidationError("generator needs positive --dim, state count and --count");
    }
    if (g.rank < 0 || g.rank > g.dim) throw ValidationError("--rank must lie in [0, dim]");
  }
}

void apply_environment(RunConfig& config) {
  const char* env = std::getenv("QHT_SEED");
  if (env == nullptr || !config.generator) return;
  try {
    std::size_t used = 0;
    const unsigned long long seed = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    config.generator->seed = seed;
  } catch (const std::exception&) {
    throw ValidationError(std::string("QHT_SEED is not an unsigned integer: ") + env);
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.output_path.empty()) {
      file.open(config.output_path);
      if (!file) throw ValidationError("cannot write " + config.output_path);
      sink = &file;
    }
    switch (config.subcommand) {
      case Subcommand::BinaryTest:
        return run_binary_test(config, *sink);
      case Subcommand::Discriminate:
        return run_discriminate(config, *sink);
      case Subcommand::Verify:
        return run_verify(config, *sink);
      case Subcommand::Channel:
        return run_channel(config, *sink);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace qht::cli
