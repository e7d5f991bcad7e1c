#pragma once

#include <string>
#include <vector>

#include "boomfleet/bnb.hpp"
#include "boomfleet/routing.hpp"

namespace boomfleet {

/// Which stages run, in order: greedy is always the starting point; dp and
/// ils refine it; bnb searches exactly from the best heuristic incumbent.
struct SolverConfig {
    HeuristicConfig heuristic;
    bool use_bnb = true;
    BnbConfig bnb;
};

/// Parses a comma list such as "greedy,dp,ils,bnb". Throws Error(config) on
/// unknown names.
void set_stages(SolverConfig& config, const std::string& list);
std::string stages_string(const SolverConfig& config);

/// Without bnb the lower bound is 0 and the report is never optimal.
SolveReport solve_routing(const MotionGraph& graph, int k, const SolverConfig& config);

/// `timings` adds wall_time; leave it off for byte-stable output.
std::string solve_report_json(const SolveReport& report, bool timings);

std::string solver_config_json(const SolverConfig& config);
SolverConfig solver_config_from_json(const std::string& text);

}  // namespace boomfleet
