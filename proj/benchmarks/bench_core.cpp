#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bentforge/charsum.hpp"
#include "bentforge/dillon.hpp"
#include "bentforge/search.hpp"

using namespace bentforge;

namespace {

std::vector<uint8_t> random_table(const FieldCtx& ctx, uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, int(ctx.p()) - 1);
    std::vector<uint8_t> f(ctx.order());
    for (auto& v : f) v = uint8_t(dist(rng));
    return f;
}

} // namespace

static void BM_FieldBuild(benchmark::State& state) {
    for (auto _ : state) {
        auto ctx = FieldCtx::build(2, int(state.range(0)));
        benchmark::DoNotOptimize(ctx.order());
    }
}
BENCHMARK(BM_FieldBuild)->Arg(8)->Arg(12)->Arg(16);

static void BM_WalshNaive(benchmark::State& state) {
    auto ctx = make_field(2, int(state.range(0)));
    auto f = random_table(*ctx, 42);
    for (auto _ : state) {
        auto s = walsh_spectrum_naive(*ctx, f);
        benchmark::DoNotOptimize(s.is_bent);
    }
}
BENCHMARK(BM_WalshNaive)->Arg(6)->Arg(8);

static void BM_WalshButterfly(benchmark::State& state) {
    auto ctx = make_field(2, int(state.range(0)));
    WalshPlan plan(ctx);
    auto f = random_table(*ctx, 42);
    for (auto _ : state) {
        auto s = plan.spectrum(f);
        benchmark::DoNotOptimize(s.is_bent);
    }
}
BENCHMARK(BM_WalshButterfly)->Arg(6)->Arg(8)->Arg(10);

static void BM_WalshButterflyTernary(benchmark::State& state) {
    auto ctx = make_field(3, 6);
    WalshPlan plan(ctx);
    auto f = random_table(*ctx, 43);
    for (auto _ : state) {
        auto s = plan.spectrum(f);
        benchmark::DoNotOptimize(s.is_bent);
    }
}
BENCHMARK(BM_WalshButterflyTernary);

static void BM_KloostermanTable(benchmark::State& state) {
    auto ctx = make_field(2, int(state.range(0)));
    for (auto _ : state) {
        CycInt acc(2);
        for (uint64_t v = 0; v < ctx->order(); ++v)
            acc += kloosterman(*ctx, Elem{uint32_t(v)});
        benchmark::DoNotOptimize(acc.is_zero());
    }
}
BENCHMARK(BM_KloostermanTable)->Arg(6)->Arg(8);

static void BM_ReferenceSearch(benchmark::State& state) {
    SearchJob job = golden_job(int(state.range(0)));
    for (auto _ : state) {
        auto records = run_search(job, int(state.range(1)));
        benchmark::DoNotOptimize(records.size());
    }
}
BENCHMARK(BM_ReferenceSearch)->Args({3, 1})->Args({4, 1})->Args({4, 8});

BENCHMARK_MAIN();
