#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "boomfleet/scenario.hpp"
#include "boomfleet/solve.hpp"

namespace boomfleet {

struct BenchmarkSpec {
    std::vector<int> spill_counts{25, 50, 100};
    std::vector<int> fleet_sizes{1, 2, 3, 5, 10};
    std::vector<std::uint64_t> seeds{1};
    ScenarioParams scenario;
    double obstacle_coverage = 0.1;
    HeuristicConfig heuristic;
    /// Shared by the cold and warm searches. A node limit keeps the table
    /// reproducible; the time limit is a safety net.
    BnbConfig bnb{60.0, 200000};
};

struct BenchmarkRow {
    int spills = 0;
    int agents = 0;
    std::uint64_t seed = 0;
    double greedy = 0.0;
    double heuristic = 0.0;
    SolveReport cold;
    SolveReport warm;
    /// Larger of the two searches' lower bounds.
    double lower_bound = 0.0;
    double heuristic_improvement = 0.0;  // (greedy - heuristic) / greedy
};

/// The scenario of one benchmark instance. Obstacles depend on the seed
/// only and spills on (seed, p), so all fleet sizes share an instance.
Scenario benchmark_scenario(const BenchmarkSpec& spec, int p, int k, std::uint64_t seed);

/// Greedy, greedy+DP+ILS, cold branch-and-bound and branch-and-bound warm
/// started from the heuristic, per (p, k, seed). Instances run in parallel
/// and rows come back in (p, k, seed) order.
std::vector<BenchmarkRow> run_routing_benchmark(const BenchmarkSpec& spec);

/// Columns: spills, agents, seed, stage, objective, lower_bound, gap, nodes, hit_limit.
/// Stages: greedy, heuristic, bnb_cold, bnb_warm. No timings, so reruns are byte-identical
/// whenever the searches stop on the node limit.
std::string benchmark_csv(const std::vector<BenchmarkRow>& rows);

}  // namespace boomfleet
