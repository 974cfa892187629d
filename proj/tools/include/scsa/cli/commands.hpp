// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "scsa/cli/run_config.hpp"
#include "scsa/signal.hpp"

namespace scsa::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kUnexpected = 1,
  kConfigError = 2,
  kDataError = 3,
  kInvariantFailure = 4,
};

/// The signal a run operates on, plus its ground truth when one is known.
struct InputSignal {
  Signal signal;
  std::optional<Signal> truth;
  std::string name;
};

/// Builds the builtin signal or loads the CSV named by `config.input`.
InputSignal resolve_input(const RunConfig& config, std::ostream& log);

/// Each command writes its files under config.output_dir and returns an exit code.
int cmd_spectrum(const RunConfig& config, std::ostream& log);
int cmd_reconstruct(const RunConfig& config, std::ostream& log);
int cmd_sweep(const RunConfig& config, std::ostream& log);
int cmd_validate(std::ostream& out);

/// Preset runs: "sech2" or "beat".
RunConfig demo_config(const std::string& preset, const std::string& output_dir);

/// Full command-line entry point; argv[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scsa::cli
