#include <benchmark/benchmark.h>

#include "polyembed/maps/main_lemma.hpp"
#include "polyembed/verify/checks.hpp"

using namespace polyembed;

static void BM_CheckInjectiveMainLemma(benchmark::State& state)
{
    const auto ml = build_main_lemma_map(1.0);
    SampleSpec spec;
    spec.count = static_cast<std::size_t>(state.range(0));
    InjectivityOptions opt;
    opt.lattice_period = 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(check_injective(*ml.map, ml.map->domain(), spec, opt));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CheckInjectiveMainLemma)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_CheckSymplecticMainLemma(benchmark::State& state)
{
    const auto ml = build_main_lemma_map(1.0);
    SampleSpec spec;
    spec.count = 4096;
    for (auto _ : state) benchmark::DoNotOptimize(check_symplectic(*ml.lifted, ml.lifted->domain(), spec));
}
BENCHMARK(BM_CheckSymplecticMainLemma)->Unit(benchmark::kMillisecond);
