#include <spc/kernels.hpp>
#include <spc/moons.hpp>
#include <spc/numerics.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

spc::SymmetricMatrix random_spd(spc::Index n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  const spc::Matrix m = spc::Matrix::NullaryExpr(n, n, [&] { return g(rng); });
  return spc::SymmetricMatrix(m * m.transpose() + spc::Matrix::Identity(n, n));
}

void BM_SymmetricEigen(benchmark::State& state) {
  const auto a = random_spd(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spc::symmetric_eigen(a));
}
BENCHMARK(BM_SymmetricEigen)->Arg(50)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_SpdFactorize(benchmark::State& state) {
  const auto a = random_spd(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spc::spd_factorize(a));
}
BENCHMARK(BM_SpdFactorize)->Arg(50)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_SpdSolveAllColumns(benchmark::State& state) {
  const auto a = random_spd(state.range(0));
  const auto f = spc::spd_factorize(a);
  for (auto _ : state) benchmark::DoNotOptimize(f.solve(a.values()));
}
BENCHMARK(BM_SpdSolveAllColumns)->Arg(50)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_StandardBank(benchmark::State& state) {
  const auto x = spc::generate_two_moons(static_cast<int>(state.range(0)), 0.08, 42);
  for (auto _ : state) benchmark::DoNotOptimize(spc::build_standard_bank(x));
}
BENCHMARK(BM_StandardBank)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace
