#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stiefel/charts.hpp"
#include "stiefel/decasteljau.hpp"
#include "stiefel/symplectic.hpp"
#include "stiefel/trajectory.hpp"

namespace stiefel {

enum class Method { Gcp, InitialPoint, MidPoint, Rk4 };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

/// Position, velocity, acceleration and jerk at t = 0, in chart coordinates.
struct Jet {
  Vector q;
  Vector qdot;
  Vector qddot;
  Vector q3;
};

/// Step of the RK4 benchmark integration.
inline constexpr double kReferenceStep = 1e-4;

struct ExperimentConfig {
  Manifold manifold = Manifold::Sphere;
  Method method = Method::Gcp;
  double total_time = 1.0;
  std::size_t steps = 100;
  Jet jet;
  std::uint64_t seed = 0;
  std::string output;
  double reference_step = kReferenceStep;

  double h() const { return total_time / static_cast<double>(steps); }
};

/// Published starting jets for the two manifolds; N = 100 over one second.
ExperimentConfig default_config(Manifold m);

/// Throws ConfigError for malformed configs and ChartOutOfBounds when the
/// starting point sits in a chart exclusion zone.
void validate(const ExperimentConfig& cfg);

/// RK4 reference on the experiment grid plus the boundary data it induces.
struct Benchmark {
  TrajectoryRecord reference;
  ChartPhaseState start;
  Vector q0, qdot0, qN, qdotN;
};

Benchmark generate_benchmark(const ExperimentConfig& cfg);

/// Pushes the chart boundary data of a benchmark into St(n,k).
CubicBoundaryData boundary_data(Manifold m, const Benchmark& bench);

/// Runs cfg.method against a precomputed benchmark.
TrajectoryRecord run_method(const ExperimentConfig& cfg, const Benchmark& bench);

/// Generates the benchmark and runs cfg.method against its boundary data.
TrajectoryRecord run_experiment(const ExperimentConfig& cfg);

/// Largest Frobenius distance between two points of St(n,k): 2 sqrt(k).
double manifold_diameter(Eigen::Index k);

struct ErrorReport {
  std::string method;
  std::string manifold;
  double h = 0.0;
  std::size_t steps = 0;
  double mean_error = 0.0;
  double relative_error = 0.0;
  double runtime_ms = 0.0;
  double diameter = 0.0;
  std::vector<double> times;
  std::vector<double> per_sample;
  /// Nonempty when the cell failed; numeric fields are then NaN.
  std::string failure;

  bool ok() const { return failure.empty(); }
};

/// Mean Frobenius distance between the embedded samples of a and b on a
/// shared time grid; relative error divides by the manifold diameter.
/// Throws GridMismatch when the grids differ.
ErrorReport mean_error(const TrajectoryRecord& a, const TrajectoryRecord& b);

struct ComparisonOptions {
  /// Measure wall-clock time per cell. Off by default so output is
  /// byte-reproducible; runtime_ms is then written as 0.
  bool timing = false;
  /// Run independent cells on separate threads.
  bool parallel = true;
};

/// For each h: GCP (computed once on the base grid and repeated per row),
/// initial-point and mid-point shooting, each against the RK4 benchmark.
/// Failed cells are recorded and the run continues.
std::vector<ErrorReport> run_comparison(Manifold m, std::span<const double> h_list,
                                        const ExperimentConfig& base,
                                        const ComparisonOptions& opts = {});

inline constexpr double kDefaultHList[] = {1.0 / 10.0, 1.0 / 20.0, 1.0 / 40.0, 1.0 / 80.0};

/// Random jets around the base config (seeded), each run with GCP and both
/// shooting integrators at the base step.
std::vector<ErrorReport> run_sweep(const ExperimentConfig& base, std::size_t samples,
                                   const ComparisonOptions& opts = {});

/// Plain "key = value" config text; '#' starts a comment. Keys: manifold,
/// method, steps, h, total_time, jet, seed, out, reference_step.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Comma-separated q, qdot, qddot, q3 (4m numbers) into a jet.
Jet parse_jet(Manifold m, std::string_view text);

}  // namespace stiefel
