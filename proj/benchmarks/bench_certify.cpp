#include <benchmark/benchmark.h>

#include "polyembed/certify/planner.hpp"
#include "polyembed/certify/validate.hpp"

using namespace polyembed;

static void BM_PlanTheorem1(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> R(n), Rp(n);
    for (std::size_t i = 0; i < n; ++i) {
        R[i] = 1.0 + static_cast<double>(i);
        Rp[i] = 2.0 + static_cast<double>(i);
    }
    for (auto _ : state) benchmark::DoNotOptimize(plan_theorem1(R, Rp));
}
BENCHMARK(BM_PlanTheorem1)->DenseRange(2, 6);

static void BM_ValidatePlan(benchmark::State& state)
{
    const auto plan = plan_theorem1({1, 2, 3, 4}, {2, 3, 4, 5});
    ValidationOptions vo;
    vo.check_evidence = false;
    for (auto _ : state) benchmark::DoNotOptimize(validate_chain(plan.steps, vo));
}
BENCHMARK(BM_ValidatePlan);
