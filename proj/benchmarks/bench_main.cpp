#include <benchmark/benchmark.h>

#include "gradeflow/catalog.hpp"
#include "gradeflow/contour.hpp"
#include "gradeflow/energy.hpp"
#include "gradeflow/field.hpp"
#include "gradeflow/verifier.hpp"

namespace {

using namespace gradeflow;

StreamFunction preset_psi(int n) {
  const FigurePreset p = figure_preset(n);
  return build_psi(p.family, p.constants);
}

Grid preset_grid(int n, int nodes) {
  const FigurePreset p = figure_preset(n);
  return Grid{p.x_range.lo, p.x_range.hi, p.y_range.lo, p.y_range.hi, nodes, nodes};
}

void BM_Derivative(benchmark::State& state) {
  const Expression psi = preset_psi(static_cast<int>(state.range(0))).psi();
  for (auto _ : state) benchmark::DoNotOptimize(d_dz(d_dzbar(psi, 2), 2));
}
BENCHMARK(BM_Derivative)->DenseRange(1, 7);

void BM_Multiply(benchmark::State& state) {
  const Expression psi = preset_psi(static_cast<int>(state.range(0))).psi();
  for (auto _ : state) benchmark::DoNotOptimize(psi * psi);
}
BENCHMARK(BM_Multiply)->DenseRange(1, 7);

void BM_GoverningResidual(benchmark::State& state) {
  const FigurePreset p = figure_preset(static_cast<int>(state.range(0)));
  const StreamFunction psi = build_psi(p.family, p.constants);
  for (auto _ : state) benchmark::DoNotOptimize(governing_residual(psi, p.constants));
}
BENCHMARK(BM_GoverningResidual)->DenseRange(1, 7)->Unit(benchmark::kMillisecond);

void BM_VerifyFamily(benchmark::State& state) {
  const FigurePreset p = figure_preset(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_family(p.family, p.constants));
}
BENCHMARK(BM_VerifyFamily)->DenseRange(1, 7)->Unit(benchmark::kMillisecond);

void BM_SampleAndContour(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Expression psi = preset_psi(n).psi();
  const Grid grid = preset_grid(n, 201);
  for (auto _ : state) {
    const ScalarField field = sample(psi, grid);
    benchmark::DoNotOptimize(marching_squares(field, pick_levels(field, 12)));
  }
}
BENCHMARK(BM_SampleAndContour)->DenseRange(1, 7)->Unit(benchmark::kMillisecond);

void BM_MEquivalence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StreamFunction psi = preset_psi(n);
  const Grid grid = preset_grid(n, 21);
  for (auto _ : state) benchmark::DoNotOptimize(check_m_equivalence(psi, grid));
}
BENCHMARK(BM_MEquivalence)->DenseRange(1, 7)->Unit(benchmark::kMillisecond);

void BM_RecoverH(benchmark::State& state) {
  const SolutionFamily f = family_from_key("constant");
  const MaterialConstants c = MaterialConstants::newtonian();
  const StreamFunction psi = build_psi(f, c);
  const Grid grid{1, 2, 1, 2, 41, 41};
  for (auto _ : state) benchmark::DoNotOptimize(recover_h(psi, c, grid, 0, 0, 2, 0));
}
BENCHMARK(BM_RecoverH)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
