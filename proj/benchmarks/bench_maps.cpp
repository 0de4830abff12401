#include <benchmark/benchmark.h>

#include "polyembed/maps/main_lemma.hpp"
#include "polyembed/maps/periodic_diffeo.hpp"
#include "polyembed/sampling.hpp"

using namespace polyembed;

static void BM_PhiEval(benchmark::State& state)
{
    const PeriodicDiffeo1D phi(static_cast<double>(state.range(0)));
    double x = 0.123;
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi.value(x));
        x += 1e-3;
    }
}
BENCHMARK(BM_PhiEval)->Arg(1)->Arg(100);

static void BM_MainLemmaEval(benchmark::State& state)
{
    const auto ml = build_main_lemma_map(1.0);
    SampleSpec spec;
    spec.count = 1024;
    const auto pts = sample(ml.map->domain(), spec);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(ml.map->eval(pts[i++ % pts.size()]));
}
BENCHMARK(BM_MainLemmaEval);

static void BM_MainLemmaJacobian(benchmark::State& state)
{
    const auto ml = build_main_lemma_map(1.0);
    SampleSpec spec;
    spec.count = 1024;
    const auto pts = sample(ml.lifted->domain(), spec);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(ml.lifted->jacobian(pts[i++ % pts.size()]));
}
BENCHMARK(BM_MainLemmaJacobian);
