// Baseline solver costs, for scale against bench_correctors.

#include <benchmark/benchmark.h>

#include <numbers>

#include "invguard/problems.hpp"
#include "invguard/schemes.hpp"
#include "invguard/timeloop.hpp"

using namespace invguard;
namespace sc = invguard::schemes;

namespace {

void BM_MusclFlux(benchmark::State& state) {
  const UniformGrid1D g(static_cast<std::size_t>(state.range(0)), 2.0 * std::numbers::pi);
  const auto u = problems::ic_sine(g);
  const auto eq = sc::ScalarEquation::burgers();
  for (auto _ : state) benchmark::DoNotOptimize(sc::numerical_flux_1d(sc::FluxScheme::MusclMc, u, eq));
}
BENCHMARK(BM_MusclFlux)->RangeMultiplier(4)->Range(64, 16384);

void BM_Poisson(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const UniformGrid2D g(n, n, 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  const auto chi = problems::ic_random_vorticity(g, 7, 8);
  sc::PeriodicPoissonSolver solver(g);
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(chi.values));
}
BENCHMARK(BM_Poisson)->RangeMultiplier(2)->Range(32, 256);

void BM_DgRhs(benchmark::State& state) {
  const UniformGrid1D g(static_cast<std::size_t>(state.range(0)), 2.0 * std::numbers::pi);
  const int p = 2;
  DgField a(g, p);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] = std::sin(0.1 * static_cast<double>(i));
  const auto rule = sc::dg_flux_burgers_godunov();
  for (auto _ : state) benchmark::DoNotOptimize(sc::dg_rhs(a, rule));
}
BENCHMARK(BM_DgRhs)->RangeMultiplier(4)->Range(64, 4096);

void BM_Ssprk3Step(benchmark::State& state) {
  const UniformGrid1D g(static_cast<std::size_t>(state.range(0)), 2.0 * std::numbers::pi);
  const auto u = problems::ic_sine(g);
  const auto eq = sc::ScalarEquation::burgers();
  const timeloop::RhsFn f = [&](const timeloop::State& y, double, double) {
    return sc::fv_rhs_1d(sc::numerical_flux_1d(sc::FluxScheme::MusclMc, FvField1D(g, y), eq), g);
  };
  for (auto _ : state) benchmark::DoNotOptimize(timeloop::ssprk3_step(u.values, 0.0, 1e-3, f));
}
BENCHMARK(BM_Ssprk3Step)->RangeMultiplier(4)->Range(64, 16384);

} // namespace

BENCHMARK_MAIN();
