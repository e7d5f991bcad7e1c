#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "boomfleet/motion_graph.hpp"

namespace boomfleet {

/// One spill-id sequence per agent; every route starts at the depot
/// implicitly and routes may be empty.
struct RouteSet {
    std::vector<std::vector<int>> routes;

    bool operator==(const RouteSet&) const = default;
};

struct DamageResult {
    double damage = 0.0;
    std::vector<double> completion;  // indexed by spill id; [0] unused
};

/// Throws Error(invalid_routeset) unless `routes` partitions spills 1..p.
void check_partition(const MotionGraph& graph, const RouteSet& routes);

/// Sum over spills of risk times completion time, where completion is the
/// prefix sum of edge costs along the spill's route.
DamageResult evaluate_damage(const MotionGraph& graph, const RouteSet& routes);

/// Damage contributed by a single route.
double route_damage(const MotionGraph& graph, const std::vector<int>& route);

/// Agents sit in a min-queue on accumulated time (ties: lower agent index);
/// the least-loaded agent appends the unassigned spill with the largest
/// risk / travel-time ratio from its last vertex (ties: lower spill id).
RouteSet greedy_assign(const MotionGraph& graph, int k);

/// Single-agent greedy ordering of a fixed set of spills (same ratio rule).
std::vector<int> greedy_order(const MotionGraph& graph, const std::vector<int>& spills);

inline constexpr int default_dp_cap = 20;

/// Exact minimum-damage ordering of `spills` for one agent starting at the
/// depot, by subset dynamic programming over (visited set, last spill).
/// Subsets of one popcount layer are evaluated in parallel; the result is
/// identical to dp_order_serial. Throws Error(capacity) above `dp_cap`.
std::vector<int> dp_order(const MotionGraph& graph, const std::vector<int>& spills, int dp_cap = default_dp_cap);
std::vector<int> dp_order_serial(const MotionGraph& graph, const std::vector<int>& spills,
                                 int dp_cap = default_dp_cap);

/// Reorders every route with dp_order when it fits under dp_cap and keeps
/// the new order only when it is no worse.
RouteSet dp_refine(const MotionGraph& graph, const RouteSet& routes, int dp_cap = default_dp_cap);

struct IlsResult {
    RouteSet best;
    std::vector<double> trace;  // best objective after each iteration
    int accepted = 0;
};

/// Iterated local search: swap the agents of two uniformly drawn spills,
/// reorder both touched routes (dp_order under dp_cap, greedy_order above),
/// accept on strict improvement. A single agent makes this a no-op.
IlsResult ils_refine(const MotionGraph& graph, const RouteSet& initial, int iterations, std::uint64_t seed,
                     int dp_cap = default_dp_cap);

struct StageResult {
    std::string stage;
    double objective = 0.0;
};

struct HeuristicConfig {
    bool use_dp = true;
    bool use_ils = true;
    int ils_iterations = 500;
    std::uint64_t seed = 0;
    int dp_cap = default_dp_cap;
};

struct HeuristicResult {
    RouteSet best;
    double objective = 0.0;
    std::vector<StageResult> stages;
};

/// Greedy assignment, then DP reordering, then ILS, each stage gated by config.
HeuristicResult run_heuristic(const MotionGraph& graph, int k, const HeuristicConfig& config = {});

/// Exhaustive optimum over ordered partitions of spills into at most k
/// sequences. Test oracle; throws Error(capacity) for more than 9 spills.
struct OracleResult {
    RouteSet best;
    double damage = 0.0;
};
OracleResult brute_force_oracle(const MotionGraph& graph, int k);

/// Routes sorted for comparison (empty routes dropped, ordered by first id).
RouteSet canonical(const RouteSet& routes);

std::string to_string(const RouteSet& routes);

}  // namespace boomfleet
