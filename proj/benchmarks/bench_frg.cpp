#include <benchmark/benchmark.h>

#include "qcst/frg.hpp"

namespace {

void BM_ModelAFR(benchmark::State& state) {
  const qcst::FRModel m = qcst::model_a(static_cast<int>(state.range(0)));
  double r = 1.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.F_R(r));
    r = r < 29.0 ? r + 0.5 : 1.5;
  }
}
BENCHMARK(BM_ModelAFR)->Arg(16)->Arg(64);

void BM_ScanGrid(benchmark::State& state) {
  const qcst::FRModel m = qcst::model_a(64);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(qcst::scan_grid({1.0, 2.0, n}, {0.5, 2.0, n}, m, 1.0, 1));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_ScanGrid)->Arg(50)->Arg(200);

}  // namespace
