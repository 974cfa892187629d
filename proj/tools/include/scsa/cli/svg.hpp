// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace scsa::cli {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color;
};

/// Minimal line chart: frame, axis extents, one polyline per series, legend.
std::string render_line_plot(const std::string& title, const std::vector<PlotSeries>& series);

void write_line_plot(const std::filesystem::path& path, const std::string& title,
                     const std::vector<PlotSeries>& series);

}  // namespace scsa::cli
