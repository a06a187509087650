#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "stiefel/csv.hpp"
#include "stiefel/harness.hpp"

namespace {

using namespace stiefel;

constexpr int kCellFailure = 2;
constexpr int kUsageError = 1;

struct CommonFlags {
  std::string config;
  std::string manifold;
  std::string jet;
  std::string out;
  std::optional<std::size_t> steps;
  bool timing = false;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config, "Key-value config file; flags override it");
  app->add_option("--manifold", f.manifold, "sphere or st32");
  app->add_option("--jet", f.jet, "Comma-separated q, qdot, qddot, q3");
  app->add_option("--out", f.out, "Output CSV path (stdout if omitted)");
  app->add_option("--steps", f.steps, "Number of steps N over the unit interval");
  app->add_flag("--timing", f.timing, "Measure runtime_ms (output is then not reproducible)");
}

std::size_t steps_for(double total, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("--h must be positive");
  const double n = std::round(total / h);
  if (n < 1.0 || std::abs(n * h - total) > 1e-9 * total) {
    throw ConfigError("--h " + format_number(h) + " does not divide the total time " +
                      format_number(total));
  }
  return static_cast<std::size_t>(n);
}

ExperimentConfig resolve(const CommonFlags& f) {
  ExperimentConfig cfg = f.config.empty() ? default_config(Manifold::Sphere) : load_config(f.config);
  if (!f.manifold.empty()) {
    const Manifold m = parse_manifold(f.manifold);
    if (m != cfg.manifold) {
      const ExperimentConfig d = default_config(m);
      cfg.manifold = m;
      cfg.jet = d.jet;
    }
  }
  if (f.steps) cfg.steps = *f.steps;
  if (!f.jet.empty()) cfg.jet = parse_jet(cfg.manifold, f.jet);
  if (!f.out.empty()) cfg.output = f.out;
  return cfg;
}

std::vector<double> parse_h_list(const std::string& text) {
  std::vector<double> hs;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      hs.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--h: cannot parse '" + item + "'");
    }
  }
  if (hs.empty()) throw ConfigError("--h: empty list");
  return hs;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

int report_failures(const std::vector<ErrorReport>& rows) {
  int failed = 0;
  for (const ErrorReport& r : rows) {
    if (r.ok()) continue;
    ++failed;
    std::cerr << "cell " << r.method << " " << r.manifold << " h=" << format_number(r.h)
              << " failed: " << r.failure << "\n";
  }
  return failed == 0 ? 0 : kCellFailure;
}

ErrorReport failed_row(const ExperimentConfig& cfg, const std::string& why) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ErrorReport r;
  r.method = std::string(to_string(cfg.method));
  r.manifold = std::string(to_string(cfg.manifold));
  r.h = cfg.h();
  r.steps = cfg.steps;
  r.mean_error = r.relative_error = r.runtime_ms = nan;
  r.failure = why;
  return r;
}

int cmd_run(const CommonFlags& f, const std::string& method, std::optional<double> h,
            const std::string& trajectory_path, const std::string& plot_path) {
  ExperimentConfig cfg = resolve(f);
  if (!method.empty()) cfg.method = parse_method(method);
  if (h) cfg.steps = steps_for(cfg.total_time, *h);
  validate(cfg);

  ErrorReport row;
  try {
    const Benchmark bench = generate_benchmark(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const TrajectoryRecord rec = run_method(cfg, bench);
    const auto t1 = std::chrono::steady_clock::now();
    row = mean_error(rec, bench.reference);
    row.method = std::string(to_string(cfg.method));
    row.manifold = std::string(to_string(cfg.manifold));
    row.h = cfg.h();
    row.steps = cfg.steps;
    row.runtime_ms = f.timing ? std::chrono::duration<double, std::milli>(t1 - t0).count() : 0.0;
    if (!trajectory_path.empty()) write_file(trajectory_path, format_trajectory_csv(rec));
    if (!plot_path.empty()) write_file(plot_path, format_plot_data(row));
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    row = failed_row(cfg, e.what());
  }
  const std::vector<ErrorReport> rows{row};
  emit(cfg.output, format_report_csv(rows));
  return report_failures(rows);
}

int cmd_compare(const CommonFlags& f, const std::string& h_text, bool serial) {
  const ExperimentConfig cfg = resolve(f);
  const std::vector<double> hs =
      h_text.empty() ? std::vector<double>(std::begin(kDefaultHList), std::end(kDefaultHList))
                     : parse_h_list(h_text);
  const auto rows = run_comparison(cfg.manifold, hs, cfg, {f.timing, !serial});
  emit(cfg.output, format_report_csv(rows));
  return report_failures(rows);
}

int cmd_sweep(const CommonFlags& f, std::optional<double> h, std::size_t samples,
              std::optional<std::uint64_t> seed, bool serial) {
  ExperimentConfig cfg = resolve(f);
  if (h) cfg.steps = steps_for(cfg.total_time, *h);
  if (seed) cfg.seed = *seed;
  const auto rows = run_sweep(cfg, samples, {f.timing, !serial});
  emit(cfg.output, format_report_csv(rows));
  return report_failures(rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic interpolation and symplectic shooting on Stiefel manifolds"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  CommonFlags run_flags, compare_flags, sweep_flags;
  std::string run_method_name, trajectory_path, plot_path, compare_h;
  std::optional<double> run_h, sweep_h;
  std::optional<std::uint64_t> sweep_seed;
  std::size_t samples = 10;
  bool compare_serial = false, sweep_serial = false;

  CLI::App* run = app.add_subcommand("run", "Run one method against the RK4 benchmark");
  add_common(run, run_flags);
  run->add_option("--method", run_method_name, "gcp, initial-point, midpoint or rk4");
  run->add_option("--h", run_h, "Step size (sets N = 1/h)");
  run->add_option("--trajectory", trajectory_path, "Write the embedded trajectory as CSV");
  run->add_option("--plot-data", plot_path, "Write per-sample t,error rows");

  CLI::App* compare = app.add_subcommand("compare", "GCP vs both shooting integrators over h");
  add_common(compare, compare_flags);
  compare->add_option("--h", compare_h, "Comma-separated step sizes (default 1/10,...,1/80)");
  compare->add_flag("--serial", compare_serial, "Evaluate cells on one thread");

  CLI::App* sweep = app.add_subcommand("sweep", "Randomly perturbed jets around the config");
  add_common(sweep, sweep_flags);
  sweep->add_option("--h", sweep_h, "Step size (sets N = 1/h)");
  sweep->add_option("--samples", samples, "Number of perturbed jets");
  sweep->add_option("--seed", sweep_seed, "Seed of the perturbation generator");
  sweep->add_flag("--serial", sweep_serial, "Evaluate cells on one thread");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_flags, run_method_name, run_h, trajectory_path, plot_path);
    if (compare->parsed()) return cmd_compare(compare_flags, compare_h, compare_serial);
    return cmd_sweep(sweep_flags, sweep_h, samples, sweep_seed, sweep_serial);
  } catch (const std::exception& e) {
    std::cerr << "stcubic: " << e.what() << "\n";
    return kUsageError;
  }
}
