#include "logperiod/fitter.hpp"
#include "logperiod/spacing.hpp"

#include <benchmark/benchmark.h>

using namespace lppl;

namespace {

LpplParams bench_params() {
    return LpplParams::make(2005.5, ScalingLaw::from_alpha(2.0, 0.45), 1.0,
                            7.0, -0.8, 0.08, ShapeKind::cosine(),
                            Orientation::Bubble);
}

const PriceSeries& bench_series() {
    static PriceSeries series =
        synth(bench_params(), 2000.0, 2005.0, 1000, 0.004, 11);
    return series;
}

FitConfig bench_config() {
    FitConfig config;
    config.tc_grid = {2005.05, 2006.0, 5.0 / 365.25};
    config.orientation = Orientation::Bubble;
    return config;
}

void BM_eval_lppl(benchmark::State& state) {
    const LpplParams p = bench_params();
    double t = 2003.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_lppl(t, p));
        t += 1e-6;
        if (t > 2005.0) t = 2003.0;
    }
}
BENCHMARK(BM_eval_lppl);

void BM_linear_subfit(benchmark::State& state) {
    const PriceSeries& series = bench_series();
    for (auto _ : state)
        benchmark::DoNotOptimize(linear_subfit(series, 2005.5, 0.45,
                                               ShapeKind::cosine(), 2.0,
                                               Orientation::Bubble));
}
BENCHMARK(BM_linear_subfit);

void BM_grid_fit(benchmark::State& state) {
    const PriceSeries& series = bench_series();
    const FitConfig config = bench_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(grid_fit(series, config));
}
BENCHMARK(BM_grid_fit)->Unit(benchmark::kMillisecond);

void BM_grid_fit_no_refine(benchmark::State& state) {
    const PriceSeries& series = bench_series();
    FitConfig config = bench_config();
    config.refine = false;
    for (auto _ : state)
        benchmark::DoNotOptimize(grid_fit(series, config));
}
BENCHMARK(BM_grid_fit_no_refine)->Unit(benchmark::kMillisecond);

void BM_detect_extrema(benchmark::State& state) {
    const PriceSeries& series = bench_series();
    for (auto _ : state)
        benchmark::DoNotOptimize(detect_extrema(series, 10, 0.0));
}
BENCHMARK(BM_detect_extrema);

}  // namespace

BENCHMARK_MAIN();
