#include <benchmark/benchmark.h>

#include <map>
#include <numeric>

#include "boomfleet/benchmark.hpp"
#include "boomfleet/motion_graph.hpp"
#include "boomfleet/routing.hpp"
#include "boomfleet/tracking.hpp"

using namespace boomfleet;

namespace {

const MotionGraph& dp_graph()
{
    static const MotionGraph g = [] {
        BenchmarkSpec spec;
        const Scenario s = benchmark_scenario(spec, 16, 1, 7);
        return build_motion_graph_serial(s, rasterize(s.workspace));
    }();
    return g;
}

std::vector<int> first_spills(int m)
{
    std::vector<int> v(static_cast<std::size_t>(m));
    std::iota(v.begin(), v.end(), 1);
    return v;
}

void BM_DpOrderSerial(benchmark::State& state)
{
    const auto spills = first_spills(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dp_order_serial(dp_graph(), spills));
}

void BM_DpOrderParallel(benchmark::State& state)
{
    const auto spills = first_spills(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dp_order(dp_graph(), spills));
}

const Scenario& graph_scenario(int p)
{
    static std::map<int, Scenario> cache;
    auto it = cache.find(p);
    if (it == cache.end()) {
        BenchmarkSpec spec;
        spec.scenario.workspace.bounds = Rect{{0.0, 0.0}, {200.0, 200.0}};
        it = cache.emplace(p, benchmark_scenario(spec, p, 1, 11)).first;
    }
    return it->second;
}

void BM_MotionGraphSerial(benchmark::State& state)
{
    const Scenario& s = graph_scenario(static_cast<int>(state.range(0)));
    const OccupancyGrid grid = rasterize(s.workspace);
    for (auto _ : state) benchmark::DoNotOptimize(build_motion_graph_serial(s, grid));
}

void BM_MotionGraphParallel(benchmark::State& state)
{
    const Scenario& s = graph_scenario(static_cast<int>(state.range(0)));
    const OccupancyGrid grid = rasterize(s.workspace);
    for (auto _ : state) benchmark::DoNotOptimize(build_motion_graph(s, grid));
}

SweepSpec small_sweep()
{
    SweepSpec spec;
    spec.rho = {12.0, 18.0};
    spec.v_ref = {5.0, 10.0};
    spec.base.goal = {60.0, 40.0, 3.14159};
    return spec;
}

void BM_SweepSerial(benchmark::State& state)
{
    SimulationOptions sim;
    for (auto _ : state) benchmark::DoNotOptimize(run_rmse_sweep_serial(small_sweep(), sim));
}

void BM_SweepParallel(benchmark::State& state)
{
    SimulationOptions sim;
    for (auto _ : state) benchmark::DoNotOptimize(run_rmse_sweep(small_sweep(), sim));
}

}  // namespace

BENCHMARK(BM_DpOrderSerial)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DpOrderParallel)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MotionGraphSerial)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MotionGraphParallel)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kSecond)->UseRealTime()->Iterations(1);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kSecond)->UseRealTime()->Iterations(1);

BENCHMARK_MAIN();
