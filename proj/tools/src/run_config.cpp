// SPDX-License-Identifier: Apache-2.0
#include "scsa/cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scsa/error.hpp"

namespace scsa::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<double> number_array(const nlohmann::json& value, const std::string& key) {
  if (value.is_number()) return {value.get<double>()};
  if (!value.is_array()) throw ConfigError("config: '" + key + "' must be a number or an array of numbers");
  std::vector<double> out;
  for (const auto& item : value) {
    if (!item.is_number()) throw ConfigError("config: '" + key + "' contains a non-numeric entry");
    out.push_back(item.get<double>());
  }
  return out;
}

}  // namespace

bool is_builtin_signal(const std::string& name) { return name == "sech2" || name == "beat"; }

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string token = trim(item);
    double value = 0.0;
    const auto* begin = token.data();
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (token.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
      throw ConfigError(what + ": cannot parse '" + token + "' as a number");
    }
    out.push_back(value);
  }
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

RunConfig config_from_json_text(const std::string& text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(origin + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(origin + ": top level must be an object");

  RunConfig c;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "input") {
        c.input = value.get<std::string>();
      } else if (key == "h_list") {
        c.h_list = number_array(value, key);
      } else if (key == "lambda_list") {
        c.lambda_list = number_array(value, key);
      } else if (key == "gamma_list") {
        c.gamma_list = number_array(value, key);
      } else if (key == "M") {
        c.M = value.get<std::size_t>();
        c.M_explicit = true;
      } else if (key == "window") {
        c.window = value.is_array() && value.size() == 2
                       ? std::to_string(value[0].get<std::size_t>()) + ":" +
                             std::to_string(value[1].get<std::size_t>())
                       : value.get<std::string>();
      } else if (key == "margin") {
        c.margin = value.get<double>();
      } else if (key == "output_dir") {
        c.output_dir = value.get<std::string>();
      } else if (key == "emit_svg") {
        c.emit_svg = value.get<bool>();
      } else if (key == "workers") {
        c.workers = value.get<std::size_t>();
      } else if (key == "spacing") {
        c.spacing = value.get<double>();
      } else {
        throw ConfigError(origin + ": unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(origin + ": wrong value type: " + e.what());
  }
  return c;
}

RunConfig load_config_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json_text(buffer.str(), path.string());
}

void validate_config(const RunConfig& c) {
  if (c.h_list.empty()) throw ConfigError("config: h_list must not be empty");
  if (c.lambda_list.empty()) throw ConfigError("config: lambda_list must not be empty");
  if (c.gamma_list.empty()) throw ConfigError("config: gamma_list must not be empty");
  for (double h : c.h_list) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("config: every h must be positive");
  }
  for (double g : c.gamma_list) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw ConfigError("config: every gamma must be >= 0");
  }
  if (c.M % 2 != 0 || c.M < 8) throw ConfigError("config: M must be even and >= 8");
  if (c.margin && !(*c.margin > 0.0)) throw ConfigError("config: margin must be > 0");
  if (c.workers == 0) throw ConfigError("config: workers must be >= 1");
  if (c.spacing && !(*c.spacing > 0.0)) throw ConfigError("config: spacing must be > 0");
}

}  // namespace scsa::cli
