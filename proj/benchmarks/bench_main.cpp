#include <benchmark/benchmark.h>

#include "ptgpe/ptgpe.hpp"

using namespace ptgpe;

namespace {

const BasisSet& basis11() {
  static const BasisSet b = build_basis(11, default_basis_grid(11));
  return b;
}

PotentialSpec kind_a(double gamma) {
  PotentialSpec s;
  s.kind = PotentialKind::A;
  s.gamma = gamma;
  return s;
}

void split_step(benchmark::State& state) {
  const auto grid = GridSpec::square(5, static_cast<int>(state.range(0)));
  auto psi = offcenter_vortex(0.3, 0.0, grid);
  const SplitStepPropagator p(grid, 1e-3, 1.0, kind_a(1.0));
  for (auto _ : state) {
    p.step(psi);
    benchmark::DoNotOptimize(psi.values().data());
  }
}
BENCHMARK(split_step)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void project_operator(benchmark::State& state) {
  const auto& b = basis11();
  const auto w = b.evaluate(initial_guess(BranchLabel::Ground, b).coeffs, b.grid());
  for (auto _ : state) benchmark::DoNotOptimize(b.project_operator(w));
}
BENCHMARK(project_operator)->Unit(benchmark::kMillisecond);

void newton_jacobian(benchmark::State& state) {
  const auto& b = basis11();
  const GpeOperator op(b, 1.0, kind_a(1.0));
  const auto g = initial_guess(BranchLabel::VortexPlus, b);
  const auto z = GpeOperator::pack(g.coeffs, g.mu);
  for (auto _ : state) benchmark::DoNotOptimize(op.real_jacobian(z, 0));
}
BENCHMARK(newton_jacobian)->Unit(benchmark::kMillisecond);

void stationary_solve(benchmark::State& state) {
  const auto& b = basis11();
  for (auto _ : state) benchmark::DoNotOptimize(solve_stationary(initial_guess(BranchLabel::VortexPlus, b), 1.0, kind_a(1.0), b));
}
BENCHMARK(stationary_solve)->Unit(benchmark::kMillisecond);

void bdg_solve(benchmark::State& state) {
  const auto& b = basis11();
  const auto s = solve_stationary(initial_guess(BranchLabel::VortexPlus, b), 1.0, kind_a(1.0), b);
  for (auto _ : state) benchmark::DoNotOptimize(solve_bdg(build_bdg_matrix(s, b)));
}
BENCHMARK(bdg_solve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
