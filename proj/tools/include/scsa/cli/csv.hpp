// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scsa/signal.hpp"

namespace scsa::cli {

/// Every double is printed with 17 significant digits so that outputs are
/// byte-stable across runs.
std::string format_double(double value);

/// In-memory CSV table with a mandatory header; written with LF endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  CsvTable& cell(double value);
  CsvTable& cell(std::size_t value);
  CsvTable& cell(std::string_view text);
  /// Throws InvariantError if the row width does not match the header.
  void end_row();

  std::size_t rows() const noexcept { return rows_; }
  const std::string& text() const noexcept { return text_; }
  /// Throws DataError if the file cannot be written.
  void write(const std::filesystem::path& path) const;

 private:
  std::size_t width_;
  std::size_t rows_ = 0;
  std::size_t cells_in_row_ = 0;
  std::string text_;
};

struct LoadedSignal {
  Signal signal;
  std::vector<std::string> warnings;
};

/// Reads "x,y" (uniform x) or single-column "y" data; the latter requires
/// `spacing`. An odd sample count drops the last sample with a warning.
/// `m_override` keeps only the first M samples.
LoadedSignal load_signal_csv(const std::filesystem::path& path, std::optional<double> spacing = {},
                             std::optional<std::size_t> m_override = {});

/// Writes columns x,y.
void write_signal_csv(const std::filesystem::path& path, const Signal& signal);

}  // namespace scsa::cli
