#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boomfleet/routing.hpp"

namespace boomfleet {

struct BnbConfig {
    double time_limit = 300.0;        // seconds; must be positive
    std::int64_t node_limit = -1;     // negative means unlimited
};

struct SolveReport {
    RouteSet best;
    double objective = 0.0;
    double lower_bound = 0.0;
    double gap = 0.0;
    std::int64_t nodes_explored = 0;
    double wall_time = 0.0;
    bool optimal = false;   // search tree exhausted
    bool hit_limit = false; // stopped by time or node limit
    std::vector<StageResult> stage_log;
};

/// Depth-first branch-and-bound over partial route sets. Each node extends
/// the active agent with the least accumulated time (ties: lower index) by
/// one unassigned spill, or closes that agent. The node bound adds, for each
/// unassigned spill, its risk times (earliest active-agent time + cheapest
/// incoming edge). Idle agents are interchangeable, so their first spills
/// must increase with agent index. On early stop the lower bound is the
/// smallest bound among unexplored nodes.
SolveReport solve_exact_bnb(const MotionGraph& graph, int k, const std::optional<RouteSet>& incumbent,
                            const BnbConfig& config);

/// gap = (objective - lower_bound) / objective, zero when objective is zero.
double relative_gap(double objective, double lower_bound);

}  // namespace boomfleet
