// qht: quantum hypothesis testing command-line tool.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qht/cli.hpp"

namespace {

void add_solver_flags(CLI::App* app, qht::cli::RunConfig& config) {
  app->add_option("--tol-gap", config.solver.tol_gap, "Dual-gap tolerance for certification");
  app->add_option("--tol-residual", config.solver.tol_residual, "Holevo residual tolerance for certification");
  app->add_option("--max-iters", config.solver.max_iters, "Fixed-point iteration budget per restart");
  app->add_option("--restarts", config.solver.restarts, "Random restarts after an uncertified first run");
}

const std::map<std::string, qht::cli::OutputFormat> kFormats{
    {"json", qht::cli::OutputFormat::Json},
    {"jsonl", qht::cli::OutputFormat::Jsonl},
    {"csv", qht::cli::OutputFormat::Csv},
};

}  // namespace

int main(int argc, char** argv) {
  using qht::cli::Subcommand;
  qht::cli::RunConfig config;
  qht::cli::Generator gen;
  std::size_t beta_grid = 0;
  double beta = 0.0;
  bool random_code = false;

  CLI::App app{"Quantum hypothesis testing: optimal binary and M-ary discrimination with certificates"};
  app.require_subcommand(1);
  app.add_option("--output,-o", config.output_path, "Write records to this file instead of stdout");

  auto* binary = app.add_subcommand("binary-test", "alpha_beta tradeoff between two states");
  binary->add_option("--rho0", config.rho0_path, "Matrix file for rho0")->required();
  binary->add_option("--rho1", config.rho1_path, "Matrix file for rho1")->required();
  auto* beta_opt = binary->add_option("--beta", beta, "Type-II error budget");
  auto* grid_opt = binary->add_option("--beta-grid", beta_grid, "Number of equispaced beta values on [0, 1]");
  beta_opt->excludes(grid_opt);
  binary->add_option("--emit", config.format, "jsonl | csv")->transform(CLI::CheckedTransformer(kFormats));

  auto* discriminate = app.add_subcommand("discriminate", "Certified minimum-error POVM for an ensemble");
  discriminate->add_option("--ensemble", config.ensemble_path, "Ensemble file")->required();
  add_solver_flags(discriminate, config);

  auto* verify = app.add_subcommand("verify", "Check the binary-test and information-spectrum expressions");
  verify->add_option("--ensemble", config.ensemble_path, "Ensemble file");
  auto* v_dim = verify->add_option("--dim", gen.dim, "Generator: Hilbert space dimension");
  verify->add_option("--num-states", gen.hypotheses, "Generator: number of hypotheses");
  verify->add_option("--rank", gen.rank, "Generator: state rank (0 = random per state)");
  verify->add_option("--seed", gen.seed, "Generator: first seed (QHT_SEED overrides)");
  verify->add_option("--count", gen.count, "Generator: number of instances");
  verify->add_option("--samples", config.mu0_samples, "Random mu0 samples per instance");
  verify->add_option("--jobs", config.jobs, "Worker threads");
  verify->add_option("--emit", config.format, "jsonl | csv")->transform(CLI::CheckedTransformer(kFormats));
  add_solver_flags(verify, config);

  auto* channel = app.add_subcommand("channel", "Converse bounds for classical-quantum codes");
  channel->add_option("--code", config.code_path, "Code file");
  channel->add_flag("--random", random_code, "Draw random codes");
  channel->add_option("--dim", gen.dim, "Output dimension");
  channel->add_option("--codewords", gen.hypotheses, "Number of codewords M");
  channel->add_option("--rank", gen.rank, "Output-state rank (0 = random per codeword)");
  channel->add_option("--seed", gen.seed, "First seed (QHT_SEED overrides)");
  channel->add_option("--count", gen.count, "Number of random codes");
  channel->add_option("--jobs", config.jobs, "Worker threads");
  channel->add_option("--emit", config.format, "csv | jsonl")->transform(CLI::CheckedTransformer(kFormats));
  add_solver_flags(channel, config);

  CLI11_PARSE(app, argc, argv);

  if (binary->parsed()) {
    config.subcommand = Subcommand::BinaryTest;
    if (beta_opt->count() > 0) config.beta = beta;
    config.beta_grid = beta_grid;
  } else if (discriminate->parsed()) {
    config.subcommand = Subcommand::Discriminate;
    config.format = qht::cli::OutputFormat::Json;
  } else if (verify->parsed()) {
    config.subcommand = Subcommand::Verify;
    if (v_dim->count() > 0 || config.ensemble_path.empty()) config.generator = gen;
  } else if (channel->parsed()) {
    config.subcommand = Subcommand::Channel;
    if (random_code) config.generator = gen;
  }

  try {
    qht::cli::apply_environment(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qht::cli::kExitFailure;
  }
  return qht::cli::run(config, std::cout, std::cerr);
}
