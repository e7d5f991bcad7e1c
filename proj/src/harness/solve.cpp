#include "boomfleet/solve.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

#include "boomfleet/error.hpp"

namespace boomfleet {

using nlohmann::json;

void set_stages(SolverConfig& config, const std::string& list)
{
    config.heuristic.use_dp = false;
    config.heuristic.use_ils = false;
    config.use_bnb = false;
    std::stringstream in(list);
    std::string name;
    while (std::getline(in, name, ',')) {
        if (name == "greedy") continue;
        if (name == "dp") config.heuristic.use_dp = true;
        else if (name == "ils") config.heuristic.use_ils = true;
        else if (name == "bnb") config.use_bnb = true;
        else throw Error(ErrorCode::config, "unknown stage '" + name + "' (expected greedy, dp, ils, bnb)");
    }
}

std::string stages_string(const SolverConfig& config)
{
    std::string s = "greedy";
    if (config.heuristic.use_dp) s += ",dp";
    if (config.heuristic.use_ils) s += ",ils";
    if (config.use_bnb) s += ",bnb";
    return s;
}

SolveReport solve_routing(const MotionGraph& graph, int k, const SolverConfig& config)
{
    const auto t0 = std::chrono::steady_clock::now();
    const HeuristicResult h = run_heuristic(graph, k, config.heuristic);
    SolveReport report;
    if (config.use_bnb) {
        report = solve_exact_bnb(graph, k, h.best, config.bnb);
    } else {
        report.best = h.best;
        report.objective = h.objective;
        report.lower_bound = 0.0;
        report.gap = relative_gap(report.objective, 0.0);
    }
    std::vector<StageResult> log = h.stages;
    log.insert(log.end(), report.stage_log.begin(), report.stage_log.end());
    report.stage_log = std::move(log);
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::string solve_report_json(const SolveReport& report, bool timings)
{
    json j;
    j["objective"] = report.objective;
    j["lower_bound"] = report.lower_bound;
    j["gap"] = report.gap;
    j["nodes_explored"] = report.nodes_explored;
    j["optimal"] = report.optimal;
    j["hit_limit"] = report.hit_limit;
    j["routes"] = report.best.routes;
    json stages = json::array();
    for (const auto& s : report.stage_log) stages.push_back({{"stage", s.stage}, {"objective", s.objective}});
    j["stages"] = stages;
    if (timings) j["wall_time"] = report.wall_time;
    return j.dump(2) + "\n";
}

std::string solver_config_json(const SolverConfig& c)
{
    json j;
    j["stages"] = stages_string(c);
    j["ils_iterations"] = c.heuristic.ils_iterations;
    j["seed"] = c.heuristic.seed;
    j["dp_cap"] = c.heuristic.dp_cap;
    j["time_limit"] = c.bnb.time_limit;
    j["node_limit"] = c.bnb.node_limit;
    return j.dump(2) + "\n";
}

SolverConfig solver_config_from_json(const std::string& text)
{
    SolverConfig c;
    try {
        const json j = json::parse(text);
        if (j.contains("stages")) set_stages(c, j["stages"].get<std::string>());
        c.heuristic.ils_iterations = j.value("ils_iterations", c.heuristic.ils_iterations);
        c.heuristic.seed = j.value("seed", c.heuristic.seed);
        c.heuristic.dp_cap = j.value("dp_cap", c.heuristic.dp_cap);
        c.bnb.time_limit = j.value("time_limit", c.bnb.time_limit);
        c.bnb.node_limit = j.value("node_limit", c.bnb.node_limit);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::config, std::string("solver config: ") + e.what());
    }
    if (c.heuristic.ils_iterations < 0) throw Error(ErrorCode::config, "ils_iterations must be non-negative");
    return c;
}

}  // namespace boomfleet
