#include <benchmark/benchmark.h>

#include <vector>

#include "outerpress/diagnostics.hpp"
#include "outerpress/harness/config.hpp"
#include "outerpress/solver.hpp"
#include "outerpress/tridiagonal.hpp"

namespace {

using namespace outerpress;

FluidState standard_state(std::size_t n) {
  SineInit init;
  return init_state(MassGrid(n), init).state;
}

void BM_Step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ThermoParams params;
  Stepper stepper(params, PressureSchedule::exponential(2.0, 1.0, 1.0), 1e-10);
  FluidState s = standard_state(n);
  for (auto _ : state) {
    stepper.advance(s, 1e-4);
    benchmark::DoNotOptimize(s.theta.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Step)->Arg(64)->Arg(256)->Arg(1024);

void BM_StepBetaHalf(benchmark::State& state) {
  ThermoParams params;
  params.beta = 0.5;
  Stepper stepper(params, PressureSchedule::exponential(2.0, 1.0, 1.0), 1e-10);
  FluidState s = standard_state(256);
  for (auto _ : state) {
    stepper.advance(s, 1e-4);
    benchmark::DoNotOptimize(s.theta.data());
  }
}
BENCHMARK(BM_StepBetaHalf);

void BM_Diagnostics(benchmark::State& state) {
  const FluidState s = standard_state(static_cast<std::size_t>(state.range(0)));
  ThermoParams params;
  for (auto _ : state) benchmark::DoNotOptimize(sample_diagnostics(s, params, 1.0));
}
BENCHMARK(BM_Diagnostics)->Arg(256)->Arg(1024);

void BM_Tridiagonal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> lower(n, -1.0), diag(n, 4.0), upper(n, -1.0), rhs(n, 1.0), scratch(n);
  for (auto _ : state) {
    std::fill(rhs.begin(), rhs.end(), 1.0);
    solve_tridiagonal(lower, diag, upper, rhs, scratch);
    benchmark::DoNotOptimize(rhs.data());
  }
}
BENCHMARK(BM_Tridiagonal)->Arg(257)->Arg(4097);

void BM_RunToTimeOne(benchmark::State& state) {
  const auto config = harness::preset_config("standard-beta1");
  SolverConfig sc = config.solver;
  sc.t_end = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(MassGrid(config.n_cells), config.initial, config.schedule, config.params, sc));
  }
}
BENCHMARK(BM_RunToTimeOne)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
