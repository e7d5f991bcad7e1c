#pragma once

#include <string>
#include <vector>

#include "boomfleet/scenario.hpp"
#include "boomfleet/solve.hpp"
#include "boomfleet/tracking.hpp"

namespace boomfleet {

struct MissionConfig {
    SolverConfig solver;
    SimulationOptions sim;
    /// u_cruise is ignored: transit legs use v_transit and loops v_encircle.
    PlanOptions plan{10.0, 20.0, 2.0, 1.0};
};

struct SpillOutcome {
    int spill = 0;
    int duo = 0;
    double planned_completion = 0.0;   // prefix sum of motion-graph costs
    double realized_completion = -1.0; // negative when the duo never finished it
    double transit_lower_bound = 0.0;  // straight-line depot distance / v_transit
};

struct DuoExecution {
    std::vector<int> route;
    SetpointPlan plan;
    /// Reference centre line: transit legs, encircle loops.
    std::vector<Vec2> centre_line;
    PlanRun run;
};

struct MissionResult {
    SolveReport solve;
    std::vector<DuoExecution> duos;
    std::vector<SpillOutcome> spills;  // ordered by spill id
    double planned_damage = 0.0;
    double realized_damage = 0.0;      // spills never finished count at the duo's final time
    bool complete = true;
};

/// Builds the reference a duo follows for one route: grid shortest paths
/// between spills, cut where they enter each spill's encircle circle
/// (circumference C, centred on the centroid), one loop around the circle
/// at v_encircle and a clean dwell of alpha_clean * V at the loop's end.
/// On the loop the lateral offset shrinks to at most the loop radius.
SetpointPlan mission_plan(const Scenario& scenario, const OccupancyGrid& grid, const std::vector<int>& route,
                          const PlanOptions& options, std::vector<Vec2>* centre_line = nullptr);

/// Solves the routing problem and simulates every duo from the depot.
/// Duos run independently (in parallel); results do not depend on the
/// thread count.
MissionResult run_mission(const Scenario& scenario, const MissionConfig& config);

/// spill, duo, planned_completion, realized_completion, transit_lower_bound, risk
std::string mission_csv(const Scenario& scenario, const MissionResult& result);

}  // namespace boomfleet
