#include <benchmark/benchmark.h>

#include <numbers>

#include "stiefel/decasteljau.hpp"
#include "stiefel/harness.hpp"
#include "stiefel/quasigeo.hpp"
#include "stiefel/symplectic.hpp"

namespace {

using namespace stiefel;

Matrix skew3(double a, double b, double c) {
  Matrix m(3, 3);
  m << 0, -a, -b, a, 0, -c, b, c, 0;
  return m;
}

void BM_Expm(benchmark::State& state) {
  const Matrix a = skew3(0.4, -1.1, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(expm(a));
}
BENCHMARK(BM_Expm);

void BM_LogmOrthogonal(benchmark::State& state) {
  const Matrix q = expm(skew3(0.4, -1.1, 0.7));
  for (auto _ : state) benchmark::DoNotOptimize(logm_orthogonal(q));
}
BENCHMARK(BM_LogmOrthogonal);

CubicCurve st32_curve() {
  const ExperimentConfig cfg = default_config(Manifold::St32);
  const StiefelPoint s0 = chart_embed(Manifold::St32, {cfg.jet.q.data(), 3});
  const Matrix s3m = expm(skew3(0.2, 0.1, -0.3)) * s0.matrix();
  const StiefelPoint s3(s3m);
  const TangentVector v0(s0, project_to_tangent(s0.matrix(), skew3(0.1, 0.3, 0.2) * s0.matrix()));
  const TangentVector v3(s3, project_to_tangent(s3m, skew3(-0.2, 0.1, 0.1) * s3m));
  return build_cubic({s0, s3, v0, v3});
}

void BM_EvalCubic(benchmark::State& state) {
  const CubicCurve c = st32_curve();
  for (auto _ : state) benchmark::DoNotOptimize(eval_cubic(c, 0.37));
}
BENCHMARK(BM_EvalCubic);

void BM_MidPointStep(benchmark::State& state) {
  const ExperimentConfig cfg = default_config(Manifold::St32);
  const Benchmark bench = generate_benchmark(cfg);
  const Vector z0 = bench.start.pack();
  const Hamiltonian& ham = chart_hamiltonian(Manifold::St32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(step(DiscretizationScheme::MidPoint, ham, 0.01, z0));
  }
}
BENCHMARK(BM_MidPointStep);

void BM_ShootBvp(benchmark::State& state) {
  ExperimentConfig cfg = default_config(Manifold::Sphere);
  cfg.steps = static_cast<std::size_t>(state.range(0));
  const Benchmark bench = generate_benchmark(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shoot_bvp(DiscretizationScheme::MidPoint, Manifold::Sphere, cfg.h(),
                                       cfg.steps, bench.q0, bench.qdot0, bench.qN, bench.qdotN));
  }
}
BENCHMARK(BM_ShootBvp)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
