#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "boomfleet/config.hpp"
#include "boomfleet/error.hpp"
#include "boomfleet/format.hpp"
#include "boomfleet/milp.hpp"
#include "boomfleet/plot.hpp"

namespace fs = std::filesystem;
using namespace boomfleet;

namespace {

struct Globals {
    std::uint64_t seed = 0;
    std::string out = ".";
    std::string config;
    bool plot = false;
};

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::io, "cannot write " + path.string());
    f << text;
    if (!f) throw Error(ErrorCode::io, "write failed for " + path.string());
}

RunConfig load(const Globals& g)
{
    return g.config.empty() ? RunConfig{} : load_run_config(g.config);
}

fs::path out_dir(const Globals& g)
{
    fs::path dir(g.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
    return dir;
}

std::vector<double> parse_range(const std::string& s)
{
    std::vector<double> v;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) v.push_back(std::stod(item));
    if (v.size() == 1) return v;
    if (v.size() != 3 || v[2] < 1) throw Error(ErrorCode::config, "range must be a value or lo,hi,count");
    return linspace(v[0], v[1], static_cast<int>(v[2]));
}

ControllerType parse_controller(const std::string& s)
{
    if (s == "pid") return ControllerType::pid;
    if (s == "fbl") return ControllerType::fbl;
    throw Error(ErrorCode::config, "controller must be pid or fbl");
}

std::string spills_csv(const Scenario& s)
{
    std::ostringstream os;
    os << "id,x,y,volume,perimeter,risk\n";
    for (const auto& sp : s.spills) {
        os << sp.id << ',' << format_double(sp.centroid.x) << ',' << format_double(sp.centroid.y) << ','
           << format_double(sp.volume) << ',' << format_double(sp.perimeter) << ',' << format_double(sp.risk) << '\n';
    }
    return os.str();
}

std::string routes_csv(const MotionGraph& graph, const RouteSet& routes)
{
    const DamageResult d = evaluate_damage(graph, routes);
    std::ostringstream os;
    os << "agent,position,spill,risk,completion\n";
    for (std::size_t a = 0; a < routes.routes.size(); ++a) {
        const auto& r = routes.routes[a];
        for (std::size_t i = 0; i < r.size(); ++i) {
            os << a << ',' << i << ',' << r[i] << ',' << format_double(graph.risk(r[i])) << ','
               << format_double(d.completion[r[i]]) << '\n';
        }
    }
    return os.str();
}

std::string stages_csv(const SolveReport& report)
{
    std::ostringstream os;
    os << "stage,objective\n";
    for (const auto& s : report.stage_log) os << s.stage << ',' << format_double(s.objective) << '\n';
    os << "lower_bound," << format_double(report.lower_bound) << '\n';
    return os.str();
}

std::string tracking_summary_csv(const TrackingExperiment& exp, ControllerType type, const TrackingResult& r)
{
    std::ostringstream os;
    os << "controller,rho,v_ref,word,complete,finish_time,cross_track_rmse_1,heading_rmse_1,cross_track_rmse_2,"
          "heading_rmse_2,max_separation,max_joint_gap\n";
    os << to_string(type) << ',' << format_double(exp.rho) << ',' << format_double(exp.v_ref) << ',' << r.word << ','
       << (r.complete ? 1 : 0) << ',' << format_double(r.finish_time) << ','
       << format_double(r.vessel[0].cross_track_rmse) << ',' << format_double(r.vessel[0].heading_rmse) << ','
       << format_double(r.vessel[1].cross_track_rmse) << ',' << format_double(r.vessel[1].heading_rmse) << ','
       << format_double(r.max_separation) << ',' << format_double(r.max_joint_gap) << '\n';
    return os.str();
}

// ------------------------------------------------------------ commands

int scenario_gen(const Globals& g, std::optional<int> spills, std::optional<int> agents, std::optional<double> coverage)
{
    RunConfig c = load(g);
    const int p = spills.value_or(c.spills);
    const int k = agents.value_or(c.agents);
    BenchmarkSpec spec;
    spec.scenario = c.scenario;
    spec.obstacle_coverage = coverage.value_or(c.obstacle_coverage);
    const Scenario s = benchmark_scenario(spec, p, k, g.seed);
    const fs::path dir = out_dir(g);
    save_scenario(s, dir / "scenario.json");
    write_file(dir / "spills.csv", spills_csv(s));
    write_pgm(rasterize(s.workspace), dir / "grid.pgm");
    std::cout << "scenario: " << p << " spills, " << k << " agents, " << s.workspace.obstacles.size()
              << " obstacles -> " << (dir / "scenario.json").string() << "\n";
    return 0;
}

struct SolveArgs {
    std::string scenario;
    std::optional<int> agents;
    std::optional<double> time_limit;
    std::optional<std::int64_t> node_limit;
    std::string stages;
    bool export_lp = false;
};

int route_solve(const Globals& g, const SolveArgs& a)
{
    RunConfig c = load(g);
    Scenario s = load_scenario(a.scenario);
    if (a.agents) s.fleet_size = *a.agents;
    SolverConfig solver = c.solver;
    solver.heuristic.seed = g.seed;
    if (!a.stages.empty()) set_stages(solver, a.stages);
    if (a.time_limit) solver.bnb.time_limit = *a.time_limit;
    if (a.node_limit) solver.bnb.node_limit = *a.node_limit;

    const MotionGraph graph = build_motion_graph(s, rasterize(s.workspace));
    const SolveReport report = solve_routing(graph, s.fleet_size, solver);
    const fs::path dir = out_dir(g);
    write_file(dir / "solve_report.json", solve_report_json(report, true));
    write_file(dir / "routes.csv", routes_csv(graph, report.best));
    write_file(dir / "stages.csv", stages_csv(report));
    if (a.export_lp) export_milp(graph, s.fleet_size, dir / "model.lp");
    std::cout << "objective " << format_double(report.objective) << ", lower bound "
              << format_double(report.lower_bound) << ", gap " << format_fixed(100.0 * report.gap, 2) << "%, "
              << report.nodes_explored << " nodes" << (report.hit_limit ? " (limit hit)" : "") << "\n";
    return report.hit_limit ? 2 : 0;
}

struct BenchArgs {
    std::string spills, agents, seeds;
    std::optional<double> time_limit;
    std::optional<std::int64_t> node_limit;
};

template <class T>
std::vector<T> parse_list(const std::string& s)
{
    std::vector<T> v;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) v.push_back(static_cast<T>(std::stoll(item)));
    return v;
}

int route_bench(const Globals& g, const BenchArgs& a)
{
    RunConfig c = load(g);
    BenchmarkSpec spec = c.bench;
    spec.scenario = c.scenario;
    spec.heuristic.seed = g.seed;
    if (!a.spills.empty()) spec.spill_counts = parse_list<int>(a.spills);
    if (!a.agents.empty()) spec.fleet_sizes = parse_list<int>(a.agents);
    if (!a.seeds.empty()) spec.seeds = parse_list<std::uint64_t>(a.seeds);
    if (a.time_limit) spec.bnb.time_limit = *a.time_limit;
    if (a.node_limit) spec.bnb.node_limit = *a.node_limit;

    const auto rows = run_routing_benchmark(spec);
    const fs::path dir = out_dir(g);
    write_file(dir / "bench.csv", benchmark_csv(rows));
    if (g.plot) {
        write_file(dir / "objective.tsv", objective_tsv(rows));
        write_file(dir / "objective.svg", objective_svg(rows));
    }
    bool flagged = false;
    for (const auto& r : rows) {
        flagged = flagged || r.cold.hit_limit || r.warm.hit_limit;
        std::cout << "p=" << r.spills << " k=" << r.agents << " seed=" << r.seed << ": greedy "
                  << format_fixed(r.greedy, 1) << ", heuristic " << format_fixed(r.heuristic, 1) << " ("
                  << format_fixed(100.0 * r.heuristic_improvement, 2) << "% better), bnb cold "
                  << format_fixed(r.cold.objective, 1) << ", warm " << format_fixed(r.warm.objective, 1)
                  << ", bound " << format_fixed(r.lower_bound, 1) << "\n";
    }
    return flagged ? 2 : 0;
}

struct TrackArgs {
    std::optional<double> rho, v_ref;
    std::string controller;
    std::string rho_range, v_range, controllers;
};

int track_run(const Globals& g, const TrackArgs& a)
{
    RunConfig c = load(g);
    TrackingExperiment exp = c.tracking;
    if (a.rho) exp.rho = *a.rho;
    if (a.v_ref) exp.v_ref = *a.v_ref;
    SimulationOptions sim = c.sim;
    if (!a.controller.empty()) sim.controller.type = parse_controller(a.controller);
    const TrackingResult r = run_tracking_experiment(exp, sim);
    const fs::path dir = out_dir(g);
    write_file(dir / "trajectory.csv", trajectory_csv(r.log));
    write_file(dir / "errors.csv", error_csv(r.log));
    write_file(dir / "summary.csv", tracking_summary_csv(exp, sim.controller.type, r));
    std::cout << to_string(sim.controller.type) << " " << r.word << ": " << (r.complete ? "complete" : "INCOMPLETE")
              << " at t=" << format_fixed(r.finish_time, 2) << " s; cross-track RMSE "
              << format_fixed(r.vessel[0].cross_track_rmse, 3) << " / " << format_fixed(r.vessel[1].cross_track_rmse, 3)
              << " m, heading RMSE " << format_fixed(r.vessel[0].heading_rmse, 2) << " / "
              << format_fixed(r.vessel[1].heading_rmse, 2) << " deg\n";
    return r.complete ? 0 : 2;
}

int track_sweep(const Globals& g, const TrackArgs& a)
{
    RunConfig c = load(g);
    SweepSpec spec;
    spec.base = c.tracking;
    spec.rho = a.rho_range.empty() ? c.sweep_rho : parse_range(a.rho_range);
    spec.v_ref = a.v_range.empty() ? c.sweep_v : parse_range(a.v_range);
    std::vector<ControllerType> types = c.sweep_controllers;
    if (!a.controllers.empty()) {
        types.clear();
        std::stringstream in(a.controllers);
        std::string item;
        while (std::getline(in, item, ',')) types.push_back(parse_controller(item));
    }
    std::vector<RmseMap> maps;
    for (ControllerType t : types) {
        SimulationOptions sim = c.sim;
        sim.controller.type = t;
        maps.push_back(run_rmse_sweep(spec, sim));
    }
    const fs::path dir = out_dir(g);
    write_file(dir / "rmse.csv", rmse_csv(maps));
    if (g.plot) {
        for (const auto& m : maps) write_file(dir / ("rmse_" + to_string(m.controller) + ".tsv"), rmse_tsv(m));
        write_file(dir / "rmse.svg", rmse_svg(maps));
    }
    bool complete = true;
    for (const auto& m : maps) complete = complete && m.all_complete();
    std::cout << maps.size() << " maps of " << spec.rho.size() << "x" << spec.v_ref.size() << " cells"
              << (complete ? "" : " (some runs incomplete)") << " -> " << (dir / "rmse.csv").string() << "\n";
    return complete ? 0 : 2;
}

int mission_run(const Globals& g, const std::string& scenario_path, const std::string& controller)
{
    RunConfig c = load(g);
    const Scenario s = load_scenario(scenario_path);
    MissionConfig mc;
    mc.solver = c.solver;
    mc.solver.heuristic.seed = g.seed;
    mc.sim = c.sim;
    if (!controller.empty()) mc.sim.controller.type = parse_controller(controller);
    mc.plan = c.mission_plan;
    const MissionResult r = run_mission(s, mc);
    const fs::path dir = out_dir(g);
    write_file(dir / "mission.csv", mission_csv(s, r));
    write_file(dir / "solve_report.json", solve_report_json(r.solve, false));
    for (std::size_t a = 0; a < r.duos.size(); ++a) {
        if (r.duos[a].route.empty()) continue;
        write_file(dir / ("duo_" + std::to_string(a) + "_trajectory.csv"), trajectory_csv(r.duos[a].run.log));
    }
    std::cout << "planned damage " << format_fixed(r.planned_damage, 2) << ", realized "
              << format_fixed(r.realized_damage, 2) << (r.complete ? "" : " (mission incomplete)") << "\n";
    return r.complete ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Damage-minimizing routing and boom-towing duo tracking"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Random seed")->default_val(0);
    app.add_option("--out", g.out, "Output directory")->default_val(".");
    app.add_option("--config", g.config, "JSON configuration file")->check(CLI::ExistingFile);
    app.add_flag("--plot", g.plot, "Also write TSV and SVG plots");

    int code = 0;
    const auto guard = [&code](auto&& fn) {
        return [&code, fn]() { code = fn(); };
    };

    auto* scenario = app.add_subcommand("scenario", "Scenario tools")->require_subcommand(1)->fallthrough();
    auto* gen = scenario->add_subcommand("gen", "Generate a random scenario")->fallthrough();
    std::optional<int> gen_spills, gen_agents;
    std::optional<double> gen_coverage;
    gen->add_option("--spills", gen_spills, "Number of spills");
    gen->add_option("--agents", gen_agents, "Fleet size");
    gen->add_option("--coverage", gen_coverage, "Obstacle area fraction");
    gen->callback(guard([&] { return scenario_gen(g, gen_spills, gen_agents, gen_coverage); }));

    SolveArgs sa;
    const auto add_solve = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", sa.scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
        cmd->add_option("--agents", sa.agents, "Fleet size (overrides the scenario)");
        cmd->add_option("--time-limit", sa.time_limit, "Branch-and-bound time limit, s");
        cmd->add_option("--node-limit", sa.node_limit, "Branch-and-bound node limit");
        cmd->add_option("--stages", sa.stages, "Comma list of greedy,dp,ils,bnb");
        cmd->add_flag("--export-lp", sa.export_lp, "Also write the MILP as model.lp");
        cmd->callback(guard([&] { return route_solve(g, sa); }));
    };
    auto* route = app.add_subcommand("route", "Routing")->require_subcommand(1)->fallthrough();
    add_solve(route->add_subcommand("solve", "Solve the routing problem")->fallthrough());
    add_solve(app.add_subcommand("solve", "Alias of route solve")->fallthrough());

    BenchArgs ba;
    auto* bench = route->add_subcommand("bench", "Greedy / heuristic / BnB comparison")->fallthrough();
    bench->add_option("--spills", ba.spills, "Comma list of spill counts");
    bench->add_option("--agents", ba.agents, "Comma list of fleet sizes");
    bench->add_option("--seeds", ba.seeds, "Comma list of instance seeds");
    bench->add_option("--time-limit", ba.time_limit, "Per-search time limit, s");
    bench->add_option("--node-limit", ba.node_limit, "Per-search node limit");
    bench->callback(guard([&] { return route_bench(g, ba); }));

    TrackArgs ta;
    auto* track = app.add_subcommand("track", "Duo path tracking")->require_subcommand(1)->fallthrough();
    auto* run = track->add_subcommand("run", "One Dubins tracking experiment")->fallthrough();
    run->add_option("--rho", ta.rho, "Turning radius, m");
    run->add_option("--v-ref", ta.v_ref, "Reference speed, m/s");
    run->add_option("--controller", ta.controller, "pid or fbl");
    run->callback(guard([&] { return track_run(g, ta); }));
    auto* sweep = track->add_subcommand("sweep", "RMSE maps over (rho, v_ref)")->fallthrough();
    sweep->add_option("--rho", ta.rho_range, "lo,hi,count");
    sweep->add_option("--v-ref", ta.v_range, "lo,hi,count");
    sweep->add_option("--controllers", ta.controllers, "Comma list of pid,fbl");
    sweep->callback(guard([&] { return track_sweep(g, ta); }));

    std::string mission_scenario, mission_controller;
    auto* mission = app.add_subcommand("mission", "Scenario to executed trajectories")->require_subcommand(1)->fallthrough();
    auto* mrun = mission->add_subcommand("run", "Solve and simulate every duo")->fallthrough();
    mrun->add_option("--scenario", mission_scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
    mrun->add_option("--controller", mission_controller, "pid or fbl");
    mrun->callback(guard([&] { return mission_run(g, mission_scenario, mission_controller); }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return code;
}
