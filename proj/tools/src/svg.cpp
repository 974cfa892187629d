// SPDX-License-Identifier: Apache-2.0
#include "scsa/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "scsa/error.hpp"

namespace scsa::cli {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_line_plot(const std::string& title, const std::vector<PlotSeries>& series) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(title) + "</text>\n";
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 4.0;
    const double fy = ymin + (ymax - ymin) * t / 4.0;
    svg += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(kHeight - kBottom + 18) +
           "\" text-anchor=\"middle\">" + label(fx) + "</text>\n";
    svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(fy) + 4) +
           "\" text-anchor=\"end\">" + label(fy) + "</text>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      svg += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
    }
    svg += "\"/>\n";
    const double ly = kTop + 16.0 + 18.0 * static_cast<double>(k);
    svg += "<line x1=\"" + num(kWidth - kRight + 10) + "\" y1=\"" + num(ly) + "\" x2=\"" +
           num(kWidth - kRight + 30) + "\" y2=\"" + num(ly) + "\" stroke=\"" + s.color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(kWidth - kRight + 36) + "\" y=\"" + num(ly + 4) + "\">" +
           escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_line_plot(const std::filesystem::path& path, const std::string& title,
                     const std::vector<PlotSeries>& series) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << render_line_plot(title, series);
}

}  // namespace scsa::cli
