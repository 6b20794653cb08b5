#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "kansa/config.hpp"

namespace kansa::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitSingular = 2,
  kExitAdmissibility = 3,
};

struct CommandOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
  /// Worker cap for the harness; 0 means hardware concurrency.
  unsigned threads = 0;
};

/// Writes solve-<kernel>-<seed>.json and, when solved, the coefficients CSV
/// and the optional evaluation grid. A failed or flagged solve also dumps the
/// matrix, its sidecar and the points, and returns kExitSingular.
int cmd_solve(const config::RunConfig& config, std::ostream& out);

/// Runs the configured experiment; writes <name>-<kernel>-<seed>.csv, a JSON
/// summary, and prints one summary line.
int cmd_experiment(const config::RunConfig& config, unsigned threads, std::ostream& out);

/// Admissibility checks, the finite-difference Laplacian suite and positive
/// definiteness of V_m on the configured boundary set. One PASS/FAIL line per
/// check; kExitAdmissibility if any fails.
int cmd_kernel_check(const config::RunConfig& config, std::ostream& out);

/// Loads the configuration and dispatches `command`, mapping exceptions to
/// exit codes: configuration problems to 1, singular systems to 2.
int run_command(std::string_view command, const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace kansa::cli
