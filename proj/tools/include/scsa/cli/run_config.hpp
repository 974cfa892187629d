// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace scsa::cli {

/// Everything a batch run needs. JSON config files use these field names.
struct RunConfig {
  /// Builtin signal name ("sech2", "beat") or a path to a CSV file.
  std::string input = "sech2";
  std::vector<double> h_list;
  std::vector<double> lambda_list{0.0};
  std::vector<double> gamma_list{0.5};
  std::size_t M = 1024;
  /// "auto" or an explicit 1-based inclusive range "lo:hi" (lo > hi wraps).
  std::string window = "auto";
  /// Margin for the automatic window; defaults to 2% of the signal range.
  std::optional<double> margin;
  std::string output_dir = "scsa_out";
  bool emit_svg = false;
  std::size_t workers = 1;
  /// Sample spacing for single-column CSV input.
  std::optional<double> spacing;
  /// Set when the M flag or key was given explicitly (truncates CSV input).
  bool M_explicit = false;
};

bool is_builtin_signal(const std::string& name);

/// Parses "0.1,0.05, 0.025" into numbers. Throws ConfigError naming `what`.
std::vector<double> parse_number_list(const std::string& text, const std::string& what);

/// Reads a JSON object whose keys mirror RunConfig. Unknown keys are rejected.
RunConfig load_config_json(const std::filesystem::path& path);
RunConfig config_from_json_text(const std::string& text, const std::string& origin = "<config>");

/// Checks list non-emptiness, positivity of h, gamma >= 0, even M.
void validate_config(const RunConfig& config);

}  // namespace scsa::cli
