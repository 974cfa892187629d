// SPDX-License-Identifier: Apache-2.0
#include "scsa/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <future>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "scsa/cli/csv.hpp"
#include "scsa/cli/svg.hpp"
#include "scsa/discretization.hpp"
#include "scsa/eigensolver.hpp"
#include "scsa/error.hpp"
#include "scsa/reconstruction.hpp"
#include "scsa/validation.hpp"

namespace scsa::cli {
namespace fs = std::filesystem;

namespace {

// Shortest round-trip text, used in file names.
std::string tag(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string point_stem(double h, double lambda, double gamma) {
  return "recon_h" + tag(h) + "_lambda" + tag(lambda) + "_gamma" + tag(gamma);
}

WindowK parse_explicit_window(const std::string& text, std::size_t m) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("window: expected 'auto' or 'lo:hi', got '" + text + "'");
  }
  std::size_t lo = 0;
  std::size_t hi = 0;
  const std::string a = text.substr(0, colon);
  const std::string b = text.substr(colon + 1);
  const auto ra = std::from_chars(a.data(), a.data() + a.size(), lo);
  const auto rb = std::from_chars(b.data(), b.data() + b.size(), hi);
  if (ra.ec != std::errc() || rb.ec != std::errc() || ra.ptr != a.data() + a.size() ||
      rb.ptr != b.data() + b.size()) {
    throw ConfigError("window: cannot parse '" + text + "'");
  }
  if (lo < 1 || hi < 1 || lo > m || hi > m) {
    throw ConfigError("window: indices must lie in [1, " + std::to_string(m) + "]");
  }
  const std::size_t count = hi >= lo ? hi - lo + 1 : m - lo + 1 + hi;
  return WindowK(lo - 1, count, m);
}

struct PointResult {
  double lambda = 0.0;
  double gamma = 0.0;
  WindowK window;
  ReconstructedSignal recon;
  std::optional<ErrorReport> error;
  std::vector<double> pointwise;  // relative error at every grid point
};

struct HResult {
  double h = 0.0;
  std::vector<std::size_t> counts;  // N_{h,lambda} per lambda
  std::size_t negative_count = 0;
  std::vector<double> negative_eigenvalues;
  std::vector<PointResult> points;
  std::optional<DecompositionDiagnostics> diagnostics;
  std::vector<std::string> warnings;
};

struct WindowChoice {
  WindowK window;
  std::vector<std::string> warnings;
};

WindowChoice choose_window(const RunConfig& config, const Signal& signal, double lambda) {
  WindowChoice out{WindowK::full(signal.size()), {}};
  if (config.window != "auto") {
    out.window = parse_explicit_window(config.window, signal.size());
  } else {
    const double margin = config.margin.value_or(default_margin(signal));
    const WindowSelection sel = window_from_lambda(signal, lambda, margin);
    out.window = sel.window;
    if (sel.fragmented) {
      out.warnings.push_back("lambda = " + tag(lambda) +
                             ": admissible region is not contiguous; using its longest run");
    }
  }
  const AdmissibilityReport adm = check_admissible(signal, lambda, out.window);
  if (!adm.below_boundary) {
    out.warnings.push_back("lambda = " + tag(lambda) +
                           ": not below the boundary values of -y (edge levels " +
                           tag(adm.left_edge_level) + ", " + tag(adm.right_edge_level) + ")");
  }
  if (!adm.inside_window) {
    out.warnings.push_back("lambda = " + tag(lambda) + ": y > -lambda fails inside the window (min " +
                           tag(adm.window_min) + ")");
  }
  if (!adm.noncritical) {
    out.warnings.push_back("lambda = " + tag(lambda) + ": -lambda is close to a critical value of y");
  }
  return out;
}

std::vector<double> pointwise_relative(const ReconstructedSignal& recon, const Signal& truth) {
  double peak = 0.0;
  for (double v : truth.values()) peak = std::max(peak, std::abs(v));
  const double floor = 1e-12 * peak;
  std::vector<double> out(truth.size());
  for (std::size_t j = 0; j < truth.size(); ++j) {
    const double denom = std::max(std::abs(truth[j]), floor);
    const double e = std::abs(recon.values[j] - truth[j]);
    out[j] = denom > 0.0 ? e / denom : e;
  }
  return out;
}

HResult run_h(const RunConfig& config, const InputSignal& input, double h, bool reconstruct_points,
              bool with_diagnostics) {
  HResult r;
  r.h = h;
  const Signal& y = input.signal;
  if (h_under_resolved(y.grid(), h)) {
    r.warnings.push_back("h = " + tag(h) + " is below twice the grid spacing (" +
                         tag(y.grid().spacing()) + "); eigenfunctions are under-resolved");
  }
  DecomposeOptions opts;
  if (with_diagnostics) {
    opts.functions_up_to = std::nullopt;
  } else if (reconstruct_points) {
    opts.functions_up_to = *std::max_element(config.lambda_list.begin(), config.lambda_list.end());
  } else {
    opts.functions_up_to = -std::numeric_limits<double>::infinity();
  }
  const SpectralDecomposition d = decompose(y, h, opts);
  r.negative_count = d.negative_count();
  for (std::size_t n = 0; n < d.negative_count(); ++n) r.negative_eigenvalues.push_back(d.eigenvalue(n));
  for (double lambda : config.lambda_list) r.counts.push_back(count_below(d, lambda));

  if (with_diagnostics) {
    r.diagnostics = diagnose(d, hamiltonian(y, h, fourier_d2(y.grid())));
  }
  if (!reconstruct_points) return r;

  for (double lambda : config.lambda_list) {
    WindowChoice win = choose_window(config, y, lambda);
    for (auto& w : win.warnings) r.warnings.push_back("h = " + tag(h) + ", " + w);
    for (double gamma : config.gamma_list) {
      PointResult p{lambda, gamma, win.window, reconstruct(d, {h, gamma, lambda, win.window}), {}, {}};
      if (input.truth) {
        p.error = relative_error(p.recon, *input.truth, win.window);
        p.pointwise = pointwise_relative(p.recon, *input.truth);
      }
      r.points.push_back(std::move(p));
    }
  }
  return r;
}

// Runs one job per h with at most `workers` in flight; results keep h order.
std::vector<HResult> run_all(const RunConfig& config, const InputSignal& input,
                             bool reconstruct_points, bool with_diagnostics) {
  std::vector<HResult> results;
  const std::size_t workers = std::max<std::size_t>(1, config.workers);
  for (std::size_t start = 0; start < config.h_list.size(); start += workers) {
    const std::size_t stop = std::min(config.h_list.size(), start + workers);
    if (workers == 1) {
      results.push_back(run_h(config, input, config.h_list[start], reconstruct_points, with_diagnostics));
      continue;
    }
    std::vector<std::future<HResult>> batch;
    for (std::size_t i = start; i < stop; ++i) {
      batch.push_back(std::async(std::launch::async, run_h, std::cref(config), std::cref(input),
                                 config.h_list[i], reconstruct_points, with_diagnostics));
    }
    for (auto& f : batch) results.push_back(f.get());
  }
  return results;
}

void write_point_files(const RunConfig& config, const InputSignal& input, double h,
                       const PointResult& p) {
  const fs::path dir(config.output_dir);
  const Grid& grid = input.signal.grid();
  const bool has_truth = input.truth.has_value();
  CsvTable table(has_truth ? std::vector<std::string>{"x", "y_true", "y_rec", "in_window", "pointwise_rel_err"}
                           : std::vector<std::string>{"x", "y_rec", "in_window"});
  for (std::size_t j = 0; j < grid.size(); ++j) {
    table.cell(grid.point(j));
    if (has_truth) table.cell((*input.truth)[j]);
    table.cell(p.recon.values[j]);
    table.cell(std::size_t{p.window.contains(j) ? 1u : 0u});
    if (has_truth) table.cell(p.pointwise[j]);
    table.end_row();
  }
  const std::string stem = point_stem(h, p.lambda, p.gamma);
  table.write(dir / (stem + ".csv"));

  if (!config.emit_svg) return;
  std::vector<double> xs(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) xs[j] = grid.point(j);
  const std::string params = "h=" + tag(h) + " lambda=" + tag(p.lambda) + " gamma=" + tag(p.gamma);
  std::vector<PlotSeries> signal_plot;
  signal_plot.push_back({"y", xs, {input.signal.values().begin(), input.signal.values().end()}, "black"});
  signal_plot.push_back({"reconstruction", xs, p.recon.values, "crimson"});
  write_line_plot(dir / (stem + ".svg"), "Signal and reconstruction, " + params, signal_plot);
  if (has_truth) {
    std::vector<double> wx, wy;
    for (std::size_t k = 0; k < p.window.count(); ++k) {
      const std::size_t j = p.window.index(k);
      wx.push_back(grid.point(j));
      wy.push_back(p.pointwise[j]);
    }
    write_line_plot(dir / (stem + "_error.svg"), "Relative error on K, " + params,
                    {{"relative error", wx, wy, "steelblue"}});
  }
}

CsvTable summary_table(const std::vector<HResult>& results, bool has_truth) {
  CsvTable table({"h", "lambda", "gamma", "N_h_lambda", "sup_rel", "rms_rel"});
  for (const auto& r : results) {
    for (const auto& p : r.points) {
      table.cell(r.h).cell(p.lambda).cell(p.gamma).cell(p.recon.terms_used);
      if (has_truth) {
        table.cell(p.error->sup_rel).cell(p.error->rms_rel);
      } else {
        table.cell(std::string_view{}).cell(std::string_view{});
      }
      table.end_row();
    }
  }
  return table;
}

void flush_warnings(const std::vector<HResult>& results, std::ostream& log) {
  for (const auto& r : results) {
    for (const auto& w : r.warnings) log << "warning: " << w << '\n';
  }
}

// Surfaces window errors before anything is written.
void check_windows(const RunConfig& config, const Signal& signal) {
  for (double lambda : config.lambda_list) choose_window(config, signal, lambda);
}

void prepare_output(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw DataError("cannot create output directory " + config.output_dir + ": " + ec.message());
}

}  // namespace

InputSignal resolve_input(const RunConfig& config, std::ostream& log) {
  if (config.input == "sech2") {
    const Signal s = sech2_signal(Grid(0.0, 10.0, config.M), 5.0);
    return {s, s, "sech2"};
  }
  if (config.input == "beat") {
    const Signal s = synthetic_beat(Grid(0.0, 1.0, config.M), 120.0, 80.0, 0.4);
    return {s, s, "beat"};
  }
  LoadedSignal loaded = load_signal_csv(config.input, config.spacing,
                                        config.M_explicit ? std::optional<std::size_t>(config.M)
                                                          : std::nullopt);
  for (const auto& w : loaded.warnings) log << "warning: " << w << '\n';
  return {loaded.signal, std::nullopt, config.input};
}

int cmd_spectrum(const RunConfig& config, std::ostream& log) {
  validate_config(config);
  const InputSignal input = resolve_input(config, log);
  prepare_output(config);
  const std::vector<HResult> results = run_all(config, input, false, false);
  flush_warnings(results, log);

  CsvTable spectrum({"h", "n", "lambda_hn"});
  CsvTable counts({"h", "lambda", "N_h", "N_h_lambda"});
  for (const auto& r : results) {
    for (std::size_t n = 0; n < r.negative_eigenvalues.size(); ++n) {
      spectrum.cell(r.h).cell(n + 1).cell(r.negative_eigenvalues[n]).end_row();
    }
    for (std::size_t i = 0; i < config.lambda_list.size(); ++i) {
      counts.cell(r.h).cell(config.lambda_list[i]).cell(r.negative_count).cell(r.counts[i]).end_row();
    }
    log << "h = " << tag(r.h) << ": N_h = " << r.negative_count << '\n';
  }
  spectrum.write(fs::path(config.output_dir) / "spectrum.csv");
  counts.write(fs::path(config.output_dir) / "counts.csv");
  return kSuccess;
}

int cmd_reconstruct(const RunConfig& config, std::ostream& log) {
  validate_config(config);
  const InputSignal input = resolve_input(config, log);
  check_windows(config, input.signal);
  prepare_output(config);
  const std::vector<HResult> results = run_all(config, input, true, false);
  flush_warnings(results, log);
  for (const auto& r : results) {
    for (const auto& p : r.points) write_point_files(config, input, r.h, p);
  }
  summary_table(results, input.truth.has_value()).write(fs::path(config.output_dir) / "summary.csv");
  return kSuccess;
}

int cmd_sweep(const RunConfig& config, std::ostream& log) {
  validate_config(config);
  if (config.h_list.size() < 2) throw ConfigError("sweep: need >=2 h values for order fit");
  std::vector<double> sorted = config.h_list;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("sweep: h values must be distinct");
  }
  RunConfig ordered = config;
  ordered.h_list = sorted;

  const InputSignal input = resolve_input(ordered, log);
  check_windows(ordered, input.signal);
  prepare_output(ordered);
  const std::vector<HResult> results = run_all(ordered, input, true, true);
  flush_warnings(results, log);
  for (const auto& r : results) {
    for (const auto& p : r.points) write_point_files(ordered, input, r.h, p);
  }
  const fs::path dir(ordered.output_dir);
  summary_table(results, input.truth.has_value()).write(dir / "summary.csv");

  bool invariants_ok = true;
  CsvTable diag({"h", "gram_deviation", "max_residual", "spectral_radius", "ok"});
  for (const auto& r : results) {
    const auto& d = *r.diagnostics;
    const bool ok = d.orthonormal() && d.residual_ok();
    invariants_ok = invariants_ok && ok;
    diag.cell(r.h).cell(d.gram_deviation).cell(d.max_residual).cell(d.spectral_radius)
        .cell(std::size_t{ok ? 1u : 0u}).end_row();
    if (!ok) log << "error: h = " << tag(r.h) << ": decomposition fails orthonormality/residual checks\n";
  }
  diag.write(dir / "diagnostics.csv");

  CsvTable conv({"lambda", "gamma", "order", "r_squared", "n_h"});
  if (!input.truth) {
    log << "warning: no ground truth for this input; convergence fits skipped\n";
  } else if (sorted.size() < 3) {
    log << "warning: an order fit needs >=3 h values; convergence.csv is left empty\n";
  } else {
    const std::size_t per_h = results.front().points.size();
    for (std::size_t k = 0; k < per_h; ++k) {
      std::vector<double> errors;
      for (const auto& r : results) errors.push_back(r.points[k].error->sup_rel);
      const auto& p = results.front().points[k];
      const bool positive = std::all_of(errors.begin(), errors.end(), [](double e) { return e > 0.0; });
      if (!positive) {
        log << "warning: lambda = " << tag(p.lambda) << ", gamma = " << tag(p.gamma)
            << ": zero error at some h; no order fit\n";
        continue;
      }
      const ConvergenceFit fit = convergence_order(sorted, errors);
      conv.cell(p.lambda).cell(p.gamma).cell(fit.order).cell(fit.r_squared).cell(sorted.size()).end_row();
    }
  }
  conv.write(dir / "convergence.csv");
  return invariants_ok ? kSuccess : kInvariantFailure;
}

int cmd_validate(std::ostream& out) {
  bool all = true;
  auto report = [&](const std::string& name, bool ok, double value) {
    out << (ok ? "PASS " : "FAIL ") << name << " (" << format_double(value) << ")\n";
    all = all && ok;
  };

  {
    const Grid g(0.0, 10.0, 64);
    const SymmetricMatrix d2 = fourier_d2(g);
    double worst = 0.0;
    for (long k = -31; k < 32; ++k) {
      const double w = 2.0 * std::numbers::pi * double(k) / g.length();
      std::vector<double> c(64);
      for (std::size_t j = 0; j < 64; ++j) c[j] = std::cos(w * g.point(j));
      const auto dc = d2.apply(c);
      for (std::size_t j = 0; j < 64; ++j) {
        worst = std::max(worst, std::abs(dc[j] + w * w * c[j]) / std::max(1.0, w * w));
      }
    }
    report("fourier_d2 spectral exactness <= 1e-9", worst <= 1e-9, worst);
  }

  const Grid grid(0.0, 10.0, 1024);
  const Signal y = sech2_signal(grid, 5.0);
  const SpectralDecomposition d = decompose(y, 0.1, {.functions_up_to = 0.0});
  {
    const auto oracle = poschl_teller_spectrum(0.1);
    double worst = 0.0;
    for (std::size_t n = 0; n < oracle.size(); ++n) {
      if (oracle[n] < -0.05) worst = std::max(worst, std::abs(oracle[n] - d.eigenvalue(n)));
    }
    report("Poschl-Teller levels below -0.05 within 1e-3", worst <= 1e-3, worst);
    report("N_h = 10 at h = 0.1", d.negative_count() == 10, double(d.negative_count()));
  }
  {
    const Grid small(0.0, 10.0, 512);
    const Signal ys = sech2_signal(small, 5.0);
    const SpectralDecomposition full = decompose(ys, 0.1);
    const DecompositionDiagnostics diag = diagnose(full, hamiltonian(ys, 0.1, fourier_d2(small)));
    report("eigenfunction Gram deviation <= 1e-8", diag.orthonormal(), diag.gram_deviation);
    report("eigen residual <= 1e-7 * spectral radius", diag.residual_ok(),
           diag.max_residual / diag.spectral_radius);
    report("trace identity <= 1e-8", diag.trace_mismatch <= 1e-8, diag.trace_mismatch);
    const SpectralDecomposition shifted = decompose(ys.shifted(0.25), 0.1, {.functions_up_to = 0.0});
    double worst = 0.0;
    for (std::size_t n = 0; n < 512; ++n) {
      worst = std::max(worst, std::abs(shifted.eigenvalue(n) - (full.eigenvalue(n) - 0.25)));
    }
    report("constant-shift covariance <= 1e-9", worst <= 1e-9, worst);
  }
  {
    const auto a = reconstruct(d, {0.1, 0.5, 0.0, WindowK::full(1024)});
    const auto b = reconstruct_zero(d);
    double worst = 0.0;
    for (std::size_t j = 0; j < 1024; ++j) worst = std::max(worst, std::abs(a.values[j] - b.values[j]));
    report("gamma = 1/2, lambda = 0 matches the zero-level formula <= 1e-12", worst <= 1e-12, worst);
  }
  {
    const double e0 = std::abs(classical_constant(0.0) - 1.0 / std::numbers::pi);
    const double e1 = std::abs(classical_constant(0.5) - 0.25);
    report("L_0 = 1/pi", e0 <= 1e-12, e0);
    report("L_1/2 = 1/4", e1 <= 1e-12, e1);
  }
  return all ? kSuccess : kInvariantFailure;
}

RunConfig demo_config(const std::string& preset, const std::string& output_dir) {
  RunConfig c;
  c.output_dir = output_dir;
  c.emit_svg = true;
  if (preset == "sech2") {
    c.input = "sech2";
    c.h_list = {0.1, 0.05};
    c.lambda_list = {0.0, -0.5};
    c.gamma_list = {0.5, 1.0, 2.0};
  } else if (preset == "beat") {
    c.input = "beat";
    c.h_list = {0.1};
    c.lambda_list = {0.0, -70.0};
    c.gamma_list = {0.5};
  } else {
    throw ConfigError("demo: unknown preset '" + preset + "' (expected sech2 or beat)");
  }
  return c;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semiclassical spectral analysis and reconstruction of 1-D signals"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  std::string config_path, input_path, signal_name, h_text, lambda_text, gamma_text, window_text, out_dir;
  std::size_t m = 1024;
  double margin = 0.0, spacing = 0.0;
  std::size_t workers = 1;
  bool svg = false;

  std::vector<CLI::Option*> options;
  auto add_run_options = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--config", config_path, "JSON file with RunConfig fields");
    sub->add_option("--input", input_path, "CSV file with columns x,y or y");
    sub->add_option("--signal", signal_name, "Builtin signal: sech2 or beat");
    sub->add_option("--h", h_text, "Comma-separated semiclassical parameters");
    sub->add_option("--lambda", lambda_text, "Comma-separated levels lambda");
    sub->add_option("--gamma", gamma_text, "Comma-separated Riesz exponents");
    sub->add_option("--M", m, "Grid size (even); truncates CSV input");
    sub->add_option("--window", window_text, "lo:hi (1-based) or auto");
    sub->add_option("--margin", margin, "Margin for the automatic window");
    sub->add_option("--spacing", spacing, "Sample spacing for single-column CSV input");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_flag("--svg", svg, "Also write SVG plots");
    sub->add_option("--workers", workers, "Concurrent h values");
  };
  CLI::App* spectrum = app.add_subcommand("spectrum", "Negative eigenvalues and counts per h");
  CLI::App* recon = app.add_subcommand("reconstruct", "Reconstruct the signal for every (h, lambda, gamma)");
  CLI::App* sweep = app.add_subcommand("sweep", "Reconstruction sweep with convergence fits and invariant checks");
  CLI::App* validate = app.add_subcommand("validate", "Run the numerical invariant suite");
  CLI::App* demo = app.add_subcommand("demo", "Preset runs for the builtin signals");
  for (CLI::App* sub : {spectrum, recon, sweep}) add_run_options(sub);
  std::string preset = "sech2";
  std::string demo_out = "scsa_demo";
  demo->add_option("--signal", preset, "sech2 or beat");
  demo->add_option("--out", demo_out, "Output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  auto build_config = [&](CLI::App* sub) {
    RunConfig c = config_path.empty() ? RunConfig{} : load_config_json(config_path);
    if (sub->count("--input") && sub->count("--signal")) {
      throw ConfigError("use either --input or --signal, not both");
    }
    if (sub->count("--input")) c.input = input_path;
    if (sub->count("--signal")) {
      if (!is_builtin_signal(signal_name)) throw ConfigError("unknown builtin signal '" + signal_name + "'");
      c.input = signal_name;
    }
    if (sub->count("--h")) c.h_list = parse_number_list(h_text, "--h");
    if (sub->count("--lambda")) c.lambda_list = parse_number_list(lambda_text, "--lambda");
    if (sub->count("--gamma")) c.gamma_list = parse_number_list(gamma_text, "--gamma");
    if (sub->count("--M")) {
      c.M = m;
      c.M_explicit = true;
    }
    if (sub->count("--window")) c.window = window_text;
    if (sub->count("--margin")) c.margin = margin;
    if (sub->count("--spacing")) c.spacing = spacing;
    if (sub->count("--out")) c.output_dir = out_dir;
    if (sub->count("--svg")) c.emit_svg = svg;
    if (sub->count("--workers")) c.workers = workers;
    return c;
  };

  try {
    if (*spectrum) return cmd_spectrum(build_config(spectrum), err);
    if (*recon) return cmd_reconstruct(build_config(recon), err);
    if (*sweep) return cmd_sweep(build_config(sweep), err);
    if (*validate) return cmd_validate(out);
    if (*demo) return cmd_reconstruct(demo_config(preset, demo_out), err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const InvariantError& e) {
    err << "invariant failure: " << e.what() << '\n';
    return kInvariantFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUnexpected;
  }
  return kUnexpected;
}

}  // namespace scsa::cli
