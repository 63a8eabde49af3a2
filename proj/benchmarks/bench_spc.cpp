#include <spc/eval.hpp>
#include <spc/mkl.hpp>
#include <spc/moons.hpp>
#include <spc/spc.hpp>

#include <benchmark/benchmark.h>

namespace {

// One alternating iteration (Laplacian, F-step, Z-step, projection).
void BM_SpcIteration(benchmark::State& state) {
  const auto x = spc::generate_two_moons(static_cast<int>(state.range(0)), 0.08, 42);
  const auto k = spc::normalize_kernel(spc::gaussian_kernel(x, 10.0));
  spc::SpcConfig cfg;
  cfg.gamma = 10.0;
  cfg.max_iters = 1 << 20;
  cfg.rel_tol = 1e-300;
  const auto factor = spc::factorize_regularized(k.values(), cfg.gamma);
  spc::SpcSolver solver(x.samples(), cfg);
  for (auto _ : state) benchmark::DoNotOptimize(solver.step(k.values(), factor));
}
BENCHMARK(BM_SpcIteration)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_KernelCosts(benchmark::State& state) {
  const auto x = spc::generate_two_moons(static_cast<int>(state.range(0)), 0.08, 42);
  const auto bank = spc::build_standard_bank(x);
  const auto z = spc::initial_graph(x.samples(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(spc::kernel_costs(bank, z, 1.0));
}
BENCHMARK(BM_KernelCosts)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_KMeans(benchmark::State& state) {
  const auto x = spc::generate_two_moons(static_cast<int>(state.range(0)), 0.08, 42);
  for (auto _ : state) benchmark::DoNotOptimize(spc::lloyd_kmeans(x, 2, 0));
}
BENCHMARK(BM_KMeans)->Arg(300)->Arg(3000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
