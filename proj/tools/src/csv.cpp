// SPDX-License-Identifier: Apache-2.0
#include "scsa/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "scsa/error.hpp"

namespace scsa::cli {

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  if (ec != std::errc()) throw InvariantError("format_double: conversion failed");
  return std::string(buf, ptr);
}

CsvTable::CsvTable(std::vector<std::string> columns) : width_(columns.size()) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) text_ += ',';
    text_ += columns[i];
  }
  text_ += '\n';
}

CsvTable& CsvTable::cell(double value) { return cell(std::string_view(format_double(value))); }

CsvTable& CsvTable::cell(std::size_t value) { return cell(std::string_view(std::to_string(value))); }

CsvTable& CsvTable::cell(std::string_view text) {
  if (cells_in_row_ > 0) text_ += ',';
  text_ += text;
  ++cells_in_row_;
  return *this;
}

void CsvTable::end_row() {
  if (cells_in_row_ != width_) {
    throw InvariantError("csv: row has " + std::to_string(cells_in_row_) + " cells, header has " +
                         std::to_string(width_));
  }
  text_ += '\n';
  cells_in_row_ = 0;
  ++rows_;
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << text_;
  if (!out) throw DataError("failed writing " + path.string());
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) cells.push_back(trim(item));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_number(const std::string& token, double& value) {
  if (token.empty()) return false;
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end && std::isfinite(value);
}

}  // namespace

LoadedSignal load_signal_csv(const std::filesystem::path& path, std::optional<double> spacing,
                             std::optional<std::size_t> m_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read input file " + path.string());

  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t columns = 0;
  std::size_t line_no = 0;
  bool seen_data = false;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split(line);
    std::vector<double> numbers(cells.size());
    bool all_numeric = true;
    std::size_t bad_col = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_number(cells[c], numbers[c])) {
        all_numeric = false;
        bad_col = c;
        break;
      }
    }
    if (!seen_data && !all_numeric) {
      // Header row.
      if (cells.size() == 2 && cells[0] == "x" && cells[1] == "y") {
        columns = 2;
      } else if (cells.size() == 1 && cells[0] == "y") {
        columns = 1;
      } else {
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": expected header 'x,y' or 'y', or numeric data");
      }
      seen_data = true;
      continue;
    }
    if (!all_numeric) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ":" +
                      std::to_string(bad_col + 1) + ": non-numeric cell '" + cells[bad_col] + "'");
    }
    if (columns == 0) columns = cells.size();
    seen_data = true;
    if (cells.size() != columns || columns > 2) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(columns == 0 ? 2 : columns) + " columns, found " +
                      std::to_string(cells.size()));
    }
    if (columns == 2) {
      xs.push_back(numbers[0]);
      ys.push_back(numbers[1]);
    } else {
      ys.push_back(numbers[0]);
    }
  }

  std::vector<std::string> warnings;
  if (ys.size() < 8) {
    throw DataError(path.string() + ": need at least 8 samples, found " + std::to_string(ys.size()));
  }

  double a = 0.0;
  double step = 0.0;
  if (columns == 2) {
    a = xs.front();
    step = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    if (!(step > 0.0)) throw DataError(path.string() + ": x must be strictly increasing");
    double worst = 0.0;
    std::size_t worst_row = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
      const double dev = std::abs((xs[i] - xs[i - 1]) - step) / step;
      if (dev > worst) {
        worst = dev;
        worst_row = i;
      }
    }
    if (worst > 1e-6) {
      throw DataError(path.string() + ": non-uniform spacing between samples " +
                      std::to_string(worst_row) + " and " + std::to_string(worst_row + 1) +
                      " (x = " + format_double(xs[worst_row - 1]) + ", " +
                      format_double(xs[worst_row]) + "; relative deviation " +
                      format_double(worst) + ")");
    }
  } else {
    if (!spacing) {
      throw ConfigError(path.string() + ": single-column input needs a sample spacing (--spacing)");
    }
    step = *spacing;
  }

  std::size_t m = ys.size();
  if (m_override) {
    if (*m_override > m) {
      throw ConfigError("M = " + std::to_string(*m_override) + " exceeds the " +
                        std::to_string(m) + " samples in " + path.string());
    }
    m = *m_override;
  } else if (m % 2 != 0) {
    warnings.push_back(path.string() + ": odd sample count " + std::to_string(m) +
                       "; dropping the last sample");
    --m;
  }
  ys.resize(m);
  const Grid grid(a, a + static_cast<double>(m) * step, m);
  return {Signal(grid, std::move(ys)), std::move(warnings)};
}

void write_signal_csv(const std::filesystem::path& path, const Signal& signal) {
  CsvTable table({"x", "y"});
  for (std::size_t j = 0; j < signal.size(); ++j) {
    table.cell(signal.grid().point(j)).cell(signal[j]).end_row();
  }
  table.write(path);
}

}  // namespace scsa::cli
