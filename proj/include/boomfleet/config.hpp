#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "boomfleet/benchmark.hpp"
#include "boomfleet/mission.hpp"
#include "boomfleet/tracking.hpp"

namespace boomfleet {

/// Everything the command line can be configured with. Every section of
/// the JSON file is optional; missing keys keep these defaults.
struct RunConfig {
    ScenarioParams scenario;
    int spills = 25;
    int agents = 3;
    double obstacle_coverage = 0.1;

    SolverConfig solver;
    SimulationOptions sim;
    TrackingExperiment tracking;

    std::vector<double> sweep_rho = linspace(10.0, 20.0, 6);
    std::vector<double> sweep_v = linspace(5.0, 15.0, 6);
    std::vector<ControllerType> sweep_controllers{ControllerType::pid, ControllerType::fbl};

    BenchmarkSpec bench;
    PlanOptions mission_plan{10.0, 20.0, 2.0, 1.0};
};

RunConfig run_config_from_json(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);
std::string run_config_json(const RunConfig& config);

}  // namespace boomfleet
