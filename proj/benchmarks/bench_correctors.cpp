// Cost of one corrector call against the flux/RHS it corrects, across grid sizes.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "invguard/correctors.hpp"
#include "invguard/problems.hpp"
#include "invguard/schemes.hpp"

using namespace invguard;
namespace sc = invguard::schemes;
namespace cr = invguard::correctors;

namespace {

FvField1D sine_field(std::size_t n) {
  const UniformGrid1D g(n, 2.0 * std::numbers::pi);
  return problems::ic_sine(g);
}

void BM_FluxL2_1D(benchmark::State& state) {
  const auto u = sine_field(static_cast<std::size_t>(state.range(0)));
  const auto f = sc::numerical_flux_1d(sc::FluxScheme::Centered, u, sc::ScalarEquation::burgers());
  for (auto _ : state) benchmark::DoNotOptimize(cr::correct_flux_l2_1d(f, u, cr::L2RateTarget::fixed(0.0)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FluxL2_1D)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_RhsL2(benchmark::State& state) {
  const auto u = sine_field(static_cast<std::size_t>(state.range(0)));
  auto N = sc::burgers_advective_rhs(u);
  for (auto _ : state) benchmark::DoNotOptimize(cr::correct_rhs_mass_l2(N, u, cr::L2RateTarget::fixed(0.0)));
}
BENCHMARK(BM_RhsL2)->RangeMultiplier(4)->Range(64, 16384);

void BM_Euler2D(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const UniformGrid2D g(n, n, 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  auto chi = problems::ic_random_vorticity(g, 7, 8);
  auto psi = sc::PeriodicPoissonSolver(g).solve(chi.values);
  auto N = sc::fv_rhs_2d(sc::advective_fluxes_2d(chi, sc::face_velocities(psi, g), sc::FluxScheme::MusclMc), g);
  VorticityState2D st{chi, psi};
  for (auto _ : state)
    benchmark::DoNotOptimize(cr::correct_euler2d_mass_energy_l2(N, st, cr::L2RateTarget::fixed(0.0)));
}
BENCHMARK(BM_Euler2D)->RangeMultiplier(2)->Range(32, 256);

void BM_EntropyPositivity(benchmark::State& state) {
  const UniformGrid1D g(static_cast<std::size_t>(state.range(0)), 1.0, Boundary::Dirichlet);
  const auto s = problems::ic_sod(g);
  const auto bc = problems::sod_boundary();
  const auto F = sc::euler1d_muscl_flux(s, bc);
  const double dt = 0.3 * g.dx_min() / sc::euler_max_speed(s, bc);
  const cr::EntropyRateTarget target{cr::estimate_boundary_entropy_flux(s, bc), 2.0};
  for (auto _ : state) {
    auto lim = cr::limit_positivity_euler1d(F, s, bc, dt, 1e-10);
    benchmark::DoNotOptimize(cr::correct_entropy_euler1d(lim.value, s, target, false));
  }
}
BENCHMARK(BM_EntropyPositivity)->RangeMultiplier(4)->Range(64, 4096);

} // namespace

BENCHMARK_MAIN();
