#include <benchmark/benchmark.h>

#include "pacp/degree_stats.hpp"
#include "pacp/estimator.hpp"
#include "pacp/growth.hpp"
#include "pacp/hypothesis.hpp"

using namespace pacp;

// Argument pairs: n, delta * 10 (so negative offsets fit in an int64 arg).
static void BM_Grow(benchmark::State& state) {
    const auto n = state.range(0);
    const double delta = static_cast<double>(state.range(1)) / 10.0;
    const auto config = ModelConfig::late_change(5, delta, -1.0, 1.0, 0.75, n);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(grow(config, seed++).degrees.data());
    state.SetItemsProcessed(state.iterations() * n * 5);
}
BENCHMARK(BM_Grow)->Args({20000, 0})->Args({200000, 0})->Args({200000, -45})->Args({200000, 100})
    ->Unit(benchmark::kMillisecond);

static void BM_Census(benchmark::State& state) {
    const auto g = grow(ModelConfig::null_model(5, 0.0, state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(census(g).n());
}
BENCHMARK(BM_Census)->Arg(200000)->Unit(benchmark::kMicrosecond);

static void BM_Score(benchmark::State& state) {
    const auto c = census(grow(ModelConfig::null_model(5, 0.0, state.range(0)), 2));
    double d = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(score(c, d));
        d = d > 1.0 ? 0.0 : d + 0.01;
    }
}
BENCHMARK(BM_Score)->Arg(20000)->Arg(200000)->Unit(benchmark::kMicrosecond);

static void BM_Mle(benchmark::State& state) {
    const auto c = census(grow(ModelConfig::null_model(5, 0.0, state.range(0)), 3));
    for (auto _ : state) benchmark::DoNotOptimize(mle(c, {-4.0, 10.0, 5}).delta_hat);
}
BENCHMARK(BM_Mle)->Arg(20000)->Arg(200000)->Unit(benchmark::kMillisecond);

static void BM_Constants(benchmark::State& state) {
    const double delta = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(v_var(delta, 5) + u_var(delta, 5));
}
BENCHMARK(BM_Constants)->Arg(0)->Arg(-45)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
