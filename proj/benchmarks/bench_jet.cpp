#include <benchmark/benchmark.h>

#include "qcst/jet.hpp"

using qcst::Jet3;

namespace {

Jet3 sample(double base) {
  Jet3 j = Jet3::variable(0, base);
  j += 0.3 * Jet3::variable(1, 0.2) + 0.1 * Jet3::variable(2, -0.4) * Jet3::variable(3, 0.7);
  return j;
}

void BM_JetMul(benchmark::State& state) {
  const Jet3 a = sample(1.1), b = sample(0.9);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMul);

void BM_JetDiv(benchmark::State& state) {
  const Jet3 a = sample(1.1), b = sample(0.9);
  for (auto _ : state) benchmark::DoNotOptimize(a / b);
}
BENCHMARK(BM_JetDiv);

void BM_JetExpSin(benchmark::State& state) {
  const Jet3 a = sample(0.4);
  for (auto _ : state) benchmark::DoNotOptimize(qcst::exp(a) * qcst::sin(a));
}
BENCHMARK(BM_JetExpSin);

}  // namespace
