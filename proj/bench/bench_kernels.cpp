// Serial reference against the OpenMP path for the quadrature-heavy kernels.
// Arg(0) = serial, Arg(1) = parallel.

#include <benchmark/benchmark.h>

#include "qhahn/measures.hpp"
#include "qhahn/momentlab.hpp"
#include "qhahn/quadrature.hpp"

namespace {

const qhahn::QParams kParams{0.5, 2.0, 3.0, 5.0};

qhahn::QuadConfig config(const benchmark::State& state) {
    qhahn::QuadConfig cfg;
    cfg.exec = state.range(0) == 0 ? qhahn::Exec::serial : qhahn::Exec::parallel;
    return cfg;
}

void BM_gram(benchmark::State& state) {
    const auto cfg = config(state);
    const auto w = qhahn::WeightSpec::full(kParams);
    for (auto _ : state) benchmark::DoNotOptimize(qhahn::gram_matrix(8, kParams, w, cfg));
}

void BM_moments(benchmark::State& state) {
    const auto cfg = config(state);
    const auto w = qhahn::WeightSpec::full(kParams);
    for (auto _ : state) benchmark::DoNotOptimize(qhahn::moments(16, w, cfg));
}

void BM_weight_grid(benchmark::State& state) {
    const auto grid = qhahn::linspace(-6.0, 6.0, 4001);
    const qhahn::ScalarIntegrand f = [](const qhahn::HyperPoint& pt) { return qhahn::full_weight(pt, kParams); };
    const auto exec = state.range(0) == 0 ? qhahn::Exec::serial : qhahn::Exec::parallel;
    for (auto _ : state) benchmark::DoNotOptimize(qhahn::evaluate_on_grid(f, grid, exec));
}

}  // namespace

BENCHMARK(BM_gram)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_moments)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_weight_grid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
