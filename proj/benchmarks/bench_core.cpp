#include <benchmark/benchmark.h>

#include "ddesim/models.hpp"
#include "ddesim/observables.hpp"
#include "ddesim/sweep.hpp"

namespace {

using namespace ddesim;

FullModelParams fig4_point() {
  FullModelParams p;
  p.delta0 = 0.02;
  p.delta1 = -0.02;
  return p;
}

void BM_Superoperator(benchmark::State& state) {
  FullModelParams p;
  p.n_max = static_cast<int>(state.range(0));
  const FullModel m = build_full_model(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lindblad_superoperator(m.hamiltonian, m.jumps));
  }
}
BENCHMARK(BM_Superoperator)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

// Includes the eager eigendecomposition.
void BM_BuildLiouvillian(benchmark::State& state) {
  FullModelParams p;
  p.n_max = static_cast<int>(state.range(0));
  const FullModel m = build_full_model(p);
  for (auto _ : state) benchmark::DoNotOptimize(m.liouvillian());
}
BENCHMARK(BM_BuildLiouvillian)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SteadyState(benchmark::State& state) {
  const Liouvillian l = build_full_model(FullModelParams{}).liouvillian();
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(l));
}
BENCHMARK(BM_SteadyState)->Unit(benchmark::kMillisecond);

void BM_G2Zero(benchmark::State& state) {
  const Liouvillian l = build_full_model(FullModelParams{}).liouvillian();
  const DensityMatrix rho = steady_state(l);
  for (auto _ : state) benchmark::DoNotOptimize(g2_zero(l, rho));
}
BENCHMARK(BM_G2Zero)->Unit(benchmark::kMillisecond);

void BM_G2Trace(benchmark::State& state) {
  const FullModelParams p = fig4_point();
  const Liouvillian l = build_full_model(p).liouvillian();
  const DensityMatrix rho = steady_state(l);
  const double tau_max = default_tau_max(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(g2_trace(l, rho, tau_max, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_G2Trace)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_SweepCell(benchmark::State& state) {
  const FullModelParams p;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_cell(p, SweepObservables{}, kDefaultG2Samples, 0.0));
  }
}
BENCHMARK(BM_SweepCell)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
