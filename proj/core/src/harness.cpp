#include "stiefel/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <numbers>
#include <random>
#include <sstream>

#include "stiefel/csv.hpp"

namespace stiefel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGridTol = 1e-9;

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

std::span<const double> as_span(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': cannot parse number '" + text + "'");
  }
}

std::size_t steps_for(double total, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("h must be positive and finite");
  const double n = std::round(total / h);
  if (n < 1.0 || std::abs(n * h - total) > 1e-9 * std::max(1.0, total)) {
    throw ConfigError("h = " + format_number(h) + " does not divide the total time " +
                      format_number(total));
  }
  return static_cast<std::size_t>(n);
}

ErrorReport failed_cell(std::string method, Manifold m, double h, std::size_t steps,
                        std::string why) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ErrorReport r;
  r.method = std::move(method);
  r.manifold = std::string(to_string(m));
  r.h = h;
  r.steps = steps;
  r.mean_error = r.relative_error = r.runtime_ms = r.diameter = nan;
  r.failure = std::move(why);
  return r;
}

// Runs one method against a benchmark and scores it; never throws.
ErrorReport score_cell(const ExperimentConfig& cfg, const Benchmark& bench, bool timing) {
  try {
    const auto t0 = std::chrono::steady_clock::now();
    const TrajectoryRecord traj = run_method(cfg, bench);
    const auto t1 = std::chrono::steady_clock::now();
    ErrorReport r = mean_error(traj, bench.reference);
    r.method = std::string(to_string(cfg.method));
    r.manifold = std::string(to_string(cfg.manifold));
    r.h = cfg.h();
    r.steps = cfg.steps;
    r.runtime_ms =
        timing ? std::chrono::duration<double, std::milli>(t1 - t0).count() : 0.0;
    return r;
  } catch (const std::exception& e) {
    return failed_cell(std::string(to_string(cfg.method)), cfg.manifold, cfg.h(), cfg.steps,
                       e.what());
  }
}

template <class Task>
std::vector<ErrorReport> run_cells(std::vector<Task> tasks, bool parallel) {
  std::vector<ErrorReport> out;
  out.reserve(tasks.size());
  if (!parallel) {
    for (auto& t : tasks) out.push_back(t());
    return out;
  }
  std::vector<std::future<ErrorReport>> futures;
  futures.reserve(tasks.size());
  for (auto& t : tasks) futures.push_back(std::async(std::launch::async, std::move(t)));
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Gcp: return "gcp";
    case Method::InitialPoint: return "initial-point";
    case Method::MidPoint: return "midpoint";
    case Method::Rk4: return "rk4";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "gcp") return Method::Gcp;
  if (name == "initial-point") return Method::InitialPoint;
  if (name == "midpoint") return Method::MidPoint;
  if (name == "rk4") return Method::Rk4;
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected gcp, initial-point, midpoint or rk4)");
}

ExperimentConfig default_config(Manifold m) {
  ExperimentConfig cfg;
  cfg.manifold = m;
  if (m == Manifold::Sphere) {
    cfg.jet = {vec({kPi / 2, kPi}), vec({0.1, 0.2}), vec({1.0, 0.5}), vec({0.1, 0.2})};
  } else {
    cfg.jet = {vec({kPi / 4, kPi, kPi}), vec({0.1, 0.1, 0.05}), vec({1.0, 0.3, 0.5}),
               vec({0.1, 0.1, 0.05})};
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.steps < 1) throw ConfigError("steps must be positive");
  if (!(cfg.total_time > 0.0) || !std::isfinite(cfg.total_time)) {
    throw ConfigError("total_time must be positive");
  }
  if (!(cfg.reference_step > 0.0)) throw ConfigError("reference_step must be positive");
  const Eigen::Index d = chart_dim(cfg.manifold);
  const Jet& j = cfg.jet;
  if (j.q.size() != d || j.qdot.size() != d || j.qddot.size() != d || j.q3.size() != d) {
    throw ConfigError("jet for " + std::string(to_string(cfg.manifold)) + " needs " +
                      std::to_string(4 * d) + " numbers");
  }
  for (const Vector* v : {&j.q, &j.qdot, &j.qddot, &j.q3}) {
    if (!v->allFinite()) throw ConfigError("jet has non-finite entries");
  }
  check_chart_point(cfg.manifold, as_span(j.q));
}

Benchmark generate_benchmark(const ExperimentConfig& cfg) {
  validate(cfg);
  const Manifold m = cfg.manifold;
  const double h = cfg.h();
  const auto stride = static_cast<std::size_t>(std::max(1.0, std::round(h / cfg.reference_step)));

  auto [p_q, p_qdot] = momenta_from_jet(m, cfg.jet.q, cfg.jet.qdot, cfg.jet.qddot, cfg.jet.q3);
  ChartPhaseState start{m, cfg.jet.q, cfg.jet.qdot, p_q, p_qdot};

  TrajectoryRecord ref =
      rk4_reference(m, h / static_cast<double>(stride), cfg.steps * stride, start, stride);
  ref.h = h;
  ref.steps = cfg.steps;
  for (std::size_t k = 0; k < ref.times.size(); ++k) ref.times[k] = static_cast<double>(k) * h;

  const Eigen::Index d = chart_dim(m);
  const Vector& last = ref.states.back();
  Benchmark b{std::move(ref), start, cfg.jet.q, cfg.jet.qdot, last.segment(0, d),
              last.segment(d, d)};
  return b;
}

CubicBoundaryData boundary_data(Manifold m, const Benchmark& bench) {
  return {chart_embed(m, as_span(bench.q0)), chart_embed(m, as_span(bench.qN)),
          chart_pushforward(m, as_span(bench.q0), as_span(bench.qdot0)),
          chart_pushforward(m, as_span(bench.qN), as_span(bench.qdotN))};
}

TrajectoryRecord run_method(const ExperimentConfig& cfg, const Benchmark& bench) {
  const Manifold m = cfg.manifold;
  switch (cfg.method) {
    case Method::Rk4:
      return bench.reference;
    case Method::Gcp: {
      const CubicCurve curve = build_cubic(boundary_data(m, bench));
      // The grid ends at total_time; the cubic is parametrized over [0, 1].
      std::vector<double> params(bench.reference.times.size());
      for (std::size_t k = 0; k < params.size(); ++k) {
        params[k] = static_cast<double>(k) / static_cast<double>(cfg.steps);
      }
      TrajectoryRecord rec = sample_cubic_at(curve, params);
      rec.times = bench.reference.times;
      rec.h = cfg.h();
      rec.steps = cfg.steps;
      return rec;
    }
    case Method::InitialPoint:
    case Method::MidPoint: {
      const auto scheme = cfg.method == Method::InitialPoint ? DiscretizationScheme::InitialPoint
                                                             : DiscretizationScheme::MidPoint;
      ShootingResult res = shoot_bvp(scheme, m, cfg.h(), cfg.steps, bench.q0, bench.qdot0,
                                     bench.qN, bench.qdotN);
      res.trajectory.times = bench.reference.times;
      return std::move(res.trajectory);
    }
  }
  throw ConfigError("unhandled method");
}

TrajectoryRecord run_experiment(const ExperimentConfig& cfg) {
  return run_method(cfg, generate_benchmark(cfg));
}

double manifold_diameter(Eigen::Index k) { return 2.0 * std::sqrt(static_cast<double>(k)); }

ErrorReport mean_error(const TrajectoryRecord& a, const TrajectoryRecord& b) {
  if (a.size() != b.size() || a.points.size() != a.size() || b.points.size() != b.size()) {
    throw GridMismatch("trajectories have " + std::to_string(a.size()) + " and " +
                       std::to_string(b.size()) + " samples");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a.times[i] - b.times[i]) > kGridTol) {
      throw GridMismatch("time grids differ at sample " + std::to_string(i));
    }
  }
  ErrorReport r;
  r.method = a.method;
  r.h = a.h;
  r.steps = a.steps;
  r.times = a.times;
  r.per_sample.reserve(a.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.points[i].rows() != b.points[i].rows() || a.points[i].cols() != b.points[i].cols()) {
      throw GridMismatch("embedded samples have different shapes");
    }
    const double e = (a.points[i] - b.points[i]).norm();
    r.per_sample.push_back(e);
    sum += e;
  }
  r.mean_error = a.size() == 0 ? 0.0 : sum / static_cast<double>(a.size());
  if (!a.points.empty()) {
    const Eigen::Index n = a.points.front().rows();
    const Eigen::Index k = a.points.front().cols();
    r.manifold = (n == 3 && k == 1)   ? "sphere"
                 : (n == 3 && k == 2) ? "st32"
                                      : "st(" + std::to_string(n) + "," + std::to_string(k) + ")";
    r.diameter = manifold_diameter(k);
    r.relative_error = r.mean_error / r.diameter;
  }
  return r;
}

std::vector<ErrorReport> run_comparison(Manifold m, std::span<const double> h_list,
                                        const ExperimentConfig& base,
                                        const ComparisonOptions& opts) {
  ExperimentConfig base_cfg = base;
  base_cfg.manifold = m;
  validate(base_cfg);

  // GCP has no step size: score it once on the base grid.
  ExperimentConfig gcp_cfg = base_cfg;
  gcp_cfg.method = Method::Gcp;
  ErrorReport gcp;
  try {
    gcp = score_cell(gcp_cfg, generate_benchmark(gcp_cfg), opts.timing);
  } catch (const std::exception& e) {
    gcp = failed_cell("gcp", m, gcp_cfg.h(), gcp_cfg.steps, e.what());
  }

  struct Cell {
    ExperimentConfig cfg;
    std::shared_ptr<const Benchmark> bench;
    std::string error;
  };
  std::vector<Cell> cells;
  for (double h : h_list) {
    ExperimentConfig cfg = base_cfg;
    std::shared_ptr<const Benchmark> bench;
    std::string error;
    try {
      cfg.steps = steps_for(cfg.total_time, h);
      bench = std::make_shared<const Benchmark>(generate_benchmark(cfg));
    } catch (const std::exception& e) {
      error = e.what();
    }
    for (Method method : {Method::InitialPoint, Method::MidPoint}) {
      cfg.method = method;
      cells.push_back({cfg, bench, error});
    }
  }

  std::vector<std::function<ErrorReport()>> tasks;
  for (const Cell& c : cells) {
    tasks.emplace_back([c, timing = opts.timing] {
      if (!c.bench) return failed_cell(std::string(to_string(c.cfg.method)), c.cfg.manifold,
                                       c.cfg.h(), c.cfg.steps, c.error);
      return score_cell(c.cfg, *c.bench, timing);
    });
  }
  const std::vector<ErrorReport> scored = run_cells(std::move(tasks), opts.parallel);

  std::vector<ErrorReport> rows;
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    ErrorReport g = gcp;
    g.h = cells[2 * i].cfg.h();
    g.steps = cells[2 * i].cfg.steps;
    rows.push_back(std::move(g));
    rows.push_back(scored[2 * i]);
    rows.push_back(scored[2 * i + 1]);
  }
  return rows;
}

std::vector<ErrorReport> run_sweep(const ExperimentConfig& base, std::size_t samples,
                                   const ComparisonOptions& opts) {
  validate(base);
  std::mt19937_64 rng(base.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  std::vector<std::function<ErrorReport()>> tasks;
  for (std::size_t s = 0; s < samples; ++s) {
    ExperimentConfig cfg = base;
    for (Vector* v : {&cfg.jet.q, &cfg.jet.qdot, &cfg.jet.qddot, &cfg.jet.q3}) {
      for (Eigen::Index i = 0; i < v->size(); ++i) (*v)[i] += 0.1 * unit(rng);
    }
    auto bench = std::make_shared<std::optional<Benchmark>>();
    std::string error;
    try {
      bench->emplace(generate_benchmark(cfg));
    } catch (const std::exception& e) {
      error = e.what();
    }
    for (Method method : {Method::Gcp, Method::InitialPoint, Method::MidPoint}) {
      cfg.method = method;
      tasks.emplace_back([cfg, bench, error, timing = opts.timing] {
        if (!bench->has_value()) {
          return failed_cell(std::string(to_string(cfg.method)), cfg.manifold, cfg.h(),
                             cfg.steps, error);
        }
        return score_cell(cfg, **bench, timing);
      });
    }
  }
  return run_cells(std::move(tasks), opts.parallel);
}

Jet parse_jet(Manifold m, std::string_view text) {
  std::vector<double> values;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) values.push_back(parse_double("jet", trim(item)));
  const int d = chart_dim(m);
  if (static_cast<int>(values.size()) != 4 * d) {
    throw ConfigError("jet for " + std::string(to_string(m)) + " needs " +
                      std::to_string(4 * d) + " comma-separated numbers, got " +
                      std::to_string(values.size()));
  }
  Jet j{Vector(d), Vector(d), Vector(d), Vector(d)};
  for (int i = 0; i < d; ++i) {
    j.q[i] = values[static_cast<std::size_t>(i)];
    j.qdot[i] = values[static_cast<std::size_t>(d + i)];
    j.qddot[i] = values[static_cast<std::size_t>(2 * d + i)];
    j.q3[i] = values[static_cast<std::size_t>(3 * d + i)];
  }
  return j;
}

ExperimentConfig parse_config(std::string_view text) {
  std::string manifold = "sphere", method = "gcp", jet, out;
  std::optional<double> h, total, reference;
  std::optional<std::size_t> steps;
  std::uint64_t seed = 0;

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "manifold") manifold = value;
    else if (key == "method") method = value;
    else if (key == "jet") jet = value;
    else if (key == "out") out = value;
    else if (key == "h") h = parse_double(key, value);
    else if (key == "total_time") total = parse_double(key, value);
    else if (key == "reference_step") reference = parse_double(key, value);
    else if (key == "steps") {
      const double n = parse_double(key, value);
      if (n < 1.0 || n != std::floor(n)) throw ConfigError("steps must be a positive integer");
      steps = static_cast<std::size_t>(n);
    } else if (key == "seed") {
      try {
        std::size_t used = 0;
        seed = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw ConfigError("'seed': cannot parse unsigned integer '" + value + "'");
      }
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }

  ExperimentConfig cfg = default_config(parse_manifold(manifold));
  cfg.method = parse_method(method);
  if (total) cfg.total_time = *total;
  if (steps) cfg.steps = *steps;
  if (h) {
    const std::size_t n = steps_for(cfg.total_time, *h);
    if (steps && *steps != n) throw ConfigError("steps and h disagree with total_time");
    cfg.steps = n;
  }
  if (reference) cfg.reference_step = *reference;
  if (!jet.empty()) cfg.jet = parse_jet(cfg.manifold, jet);
  cfg.seed = seed;
  cfg.output = out;
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

}  // namespace stiefel
