#include <benchmark/benchmark.h>

#include "qcst/curvature.hpp"
#include "qcst/metric.hpp"
#include "qcst/qc.hpp"

namespace {

void BM_EvalMetric(benchmark::State& state) {
  const qcst::MetricSpec s = qcst::builtin("schwarzschild");
  const qcst::Vec4 p{0.0, 4.0, 1.1, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(qcst::eval_metric(s, p));
}
BENCHMARK(BM_EvalMetric);

void BM_ComputeCurvature(benchmark::State& state) {
  const qcst::MetricSpec s = qcst::builtin("flrw-closed");
  const qcst::MetricJet mj = qcst::eval_metric(s, {1.1, 0.7, 1.2, 0.3});
  for (auto _ : state) benchmark::DoNotOptimize(qcst::compute_curvature(mj));
}
BENCHMARK(BM_ComputeCurvature);

void BM_DetectQc(benchmark::State& state) {
  const qcst::CurvatureBundle b =
      qcst::compute_curvature(qcst::eval_metric(qcst::builtin("flrw-closed"), {1.1, 0.7, 1.2, 0.3}));
  for (auto _ : state) benchmark::DoNotOptimize(qcst::detect_qc(b));
}
BENCHMARK(BM_DetectQc);

}  // namespace
