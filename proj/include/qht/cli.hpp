#pragma once

// Command-line front end: subcommands binary-test, discriminate, verify and
// channel. Argument parsing lives in tools/; this layer takes a parsed
// RunConfig so that it can be driven from tests.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "qht/discrimination.hpp"

namespace qht::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
/// Records were emitted but some instance is uncertified or misses a tolerance.
inline constexpr int kExitNotCertified = 2;

enum class Subcommand { BinaryTest, Discriminate, Verify, Channel };
enum class OutputFormat { Json, Jsonl, Csv };

struct Generator {
  Index dim = 2;
  std::size_t hypotheses = 2;
  Index rank = 0;  // 0: random rank per state
  std::uint64_t seed = 0;
  std::size_t count = 1;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::Verify;
  // binary-test
  std::string rho0_path;
  std::string rho1_path;
  std::optional<double> beta;
  std::size_t beta_grid = 0;
  // discriminate / verify
  std::string ensemble_path;
  // channel
  std::string code_path;
  std::optional<Generator> generator;

  SolverOptions solver;
  int mu0_samples = 20;
  unsigned jobs = 1;
  OutputFormat format = OutputFormat::Jsonl;
  std::string output_path;  // empty: the `out` stream passed to run()
};

/// Throws ValidationError: exactly one input source, positive tolerances, ...
void validate(const RunConfig& config);

/// QHT_SEED, when set, overrides the generator seed.
void apply_environment(RunConfig& config);

/// Executes one subcommand. Errors are reported on `err`; returns one of the
/// kExit* codes. Identical configs produce identical record bytes; the
/// wall-time metadata line is always last.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qht::cli
