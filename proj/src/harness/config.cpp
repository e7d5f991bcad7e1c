#include "boomfleet/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "boomfleet/error.hpp"

namespace boomfleet {

using nlohmann::json;

namespace {

template <class T>
void get(const json& j, const char* key, T& out)
{
    if (j.contains(key)) out = j.at(key).get<T>();
}

void get_pair(const json& j, const char* key, double& lo, double& hi)
{
    if (!j.contains(key)) return;
    const auto v = j.at(key).get<std::vector<double>>();
    if (v.size() != 2) throw Error(ErrorCode::config, std::string(key) + " must be [lo, hi]");
    lo = v[0];
    hi = v[1];
}

void get_vec2(const json& j, const char* key, Vec2& p)
{
    get_pair(j, key, p.x, p.y);
}

void get_pose(const json& j, const char* key, Pose& p)
{
    if (!j.contains(key)) return;
    const auto v = j.at(key).get<std::vector<double>>();
    if (v.size() != 3) throw Error(ErrorCode::config, std::string(key) + " must be [x, y, theta]");
    p = {v[0], v[1], v[2]};
}

std::vector<double> range(const json& j, const char* key, std::vector<double> fallback)
{
    if (!j.contains(key)) return fallback;
    const auto v = j.at(key).get<std::vector<double>>();
    if (v.size() != 3 || v[2] < 1) throw Error(ErrorCode::config, std::string(key) + " must be [lo, hi, count]");
    return linspace(v[0], v[1], static_cast<int>(v[2]));
}

ControllerType controller_type(const std::string& s)
{
    if (s == "pid") return ControllerType::pid;
    if (s == "fbl") return ControllerType::fbl;
    throw Error(ErrorCode::config, "controller type must be \"pid\" or \"fbl\"");
}

}  // namespace

RunConfig run_config_from_json(const std::string& text)
{
    RunConfig c;
    try {
        const json root = json::parse(text);
        if (!root.is_object()) throw Error(ErrorCode::config, "config must be a JSON object");
        static const std::set<std::string> sections{"scenario", "solver",  "vessel", "boom",  "simulation",
                                                    "controller", "tracking", "sweep", "bench", "mission"};
        for (const auto& [key, value] : root.items()) {
            if (!sections.count(key)) throw Error(ErrorCode::config, "unknown config section \"" + key + "\"");
            if (!value.is_object()) throw Error(ErrorCode::config, "config section \"" + key + "\" must be an object");
        }
        if (root.contains("scenario")) {
            const json& j = root["scenario"];
            get(j, "spills", c.spills);
            get(j, "agents", c.agents);
            get(j, "obstacle_coverage", c.obstacle_coverage);
            if (j.contains("bounds")) {
                const auto b = j["bounds"].get<std::vector<double>>();
                if (b.size() != 4) throw Error(ErrorCode::config, "bounds must be [x0, y0, x1, y1]");
                c.scenario.workspace.bounds = Rect{{b[0], b[1]}, {b[2], b[3]}};
            }
            get(j, "resolution", c.scenario.workspace.grid_resolution);
            get_vec2(j, "depot", c.scenario.depot);
            get_pair(j, "risk", c.scenario.risk_min, c.scenario.risk_max);
            get_pair(j, "volume", c.scenario.volume_min, c.scenario.volume_max);
            get(j, "slick_thickness", c.scenario.slick_thickness);
            get(j, "v_transit", c.scenario.v_transit);
            get(j, "v_encircle", c.scenario.v_encircle);
            get(j, "alpha_clean", c.scenario.alpha_clean);
            get(j, "boom_length", c.scenario.boom_length);
        }
        if (root.contains("solver")) c.solver = solver_config_from_json(root["solver"].dump());
        if (root.contains("vessel")) {
            const json& j = root["vessel"];
            VesselParams& v = c.sim.duo.vessel;
            get(j, "m", v.m);
            get(j, "I", v.I);
            get(j, "r", v.r);
            get(j, "kappa_l", v.kappa_l);
            get(j, "kappa_t", v.kappa_t);
            get(j, "kappa_w", v.kappa_w);
            get(j, "F_max", v.F_max);
            get(j, "eta_max", v.eta_max);
        }
        if (root.contains("boom")) {
            const json& j = root["boom"];
            BoomParams& b = c.sim.duo.boom;
            get(j, "n_links", b.n_links);
            get(j, "total_length", b.total_length);
            get(j, "link_mass", b.link_mass);
            get(j, "link_inertia", b.link_inertia);
            get(j, "k_spring", b.k_spring);
            get(j, "c_damper", b.c_damper);
            get(j, "kappa_t_link", b.kappa_t_link);
            get(j, "kappa_l_link", b.kappa_l_link);
            get(j, "kappa_w_link", b.kappa_w_link);
        }
        if (root.contains("simulation")) {
            const json& j = root["simulation"];
            get(j, "dt", c.sim.duo.dt);
            get(j, "duration_cap", c.sim.duration_cap);
            get(j, "log_interval", c.sim.log_interval);
        }
        if (root.contains("controller")) c.sim.controller = controller_from_json(root["controller"].dump());
        if (root.contains("tracking")) {
            const json& j = root["tracking"];
            TrackingExperiment& t = c.tracking;
            get_pose(j, "start", t.start);
            get_pose(j, "goal", t.goal);
            get(j, "rho", t.rho);
            get(j, "v_ref", t.v_ref);
            get(j, "spacing", t.plan.spacing);
            get(j, "lateral_offset", t.plan.lateral_offset);
            get(j, "arrival_radius", t.plan.arrival_radius);
            get(j, "start_separation", t.start_separation);
        }
        if (root.contains("sweep")) {
            const json& j = root["sweep"];
            c.sweep_rho = range(j, "rho", c.sweep_rho);
            c.sweep_v = range(j, "v_ref", c.sweep_v);
            if (j.contains("controllers")) {
                c.sweep_controllers.clear();
                for (const auto& s : j["controllers"]) c.sweep_controllers.push_back(controller_type(s.get<std::string>()));
            }
        }
        if (root.contains("bench")) {
            const json& j = root["bench"];
            get(j, "spills", c.bench.spill_counts);
            get(j, "agents", c.bench.fleet_sizes);
            get(j, "seeds", c.bench.seeds);
            get(j, "time_limit", c.bench.bnb.time_limit);
            get(j, "node_limit", c.bench.bnb.node_limit);
            get(j, "ils_iterations", c.bench.heuristic.ils_iterations);
            get(j, "obstacle_coverage", c.bench.obstacle_coverage);
        }
        if (root.contains("mission")) {
            const json& j = root["mission"];
            get(j, "spacing", c.mission_plan.spacing);
            get(j, "lateral_offset", c.mission_plan.lateral_offset);
            get(j, "arrival_radius", c.mission_plan.arrival_radius);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::config, std::string("config: ") + e.what());
    }
    c.sim.duo.validate();
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot read config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return run_config_from_json(ss.str());
}

std::string run_config_json(const RunConfig& c)
{
    json root;
    const ScenarioParams& s = c.scenario;
    const Rect& b = s.workspace.bounds;
    root["scenario"] = {{"spills", c.spills},
                        {"agents", c.agents},
                        {"obstacle_coverage", c.obstacle_coverage},
                        {"bounds", {b.min.x, b.min.y, b.max.x, b.max.y}},
                        {"resolution", s.workspace.grid_resolution},
                        {"depot", {s.depot.x, s.depot.y}},
                        {"risk", {s.risk_min, s.risk_max}},
                        {"volume", {s.volume_min, s.volume_max}},
                        {"slick_thickness", s.slick_thickness},
                        {"v_transit", s.v_transit},
                        {"v_encircle", s.v_encircle},
                        {"alpha_clean", s.alpha_clean},
                        {"boom_length", s.boom_length}};
    root["solver"] = json::parse(solver_config_json(c.solver));
    const VesselParams& v = c.sim.duo.vessel;
    root["vessel"] = {{"m", v.m},          {"I", v.I},         {"r", v.r},         {"kappa_l", v.kappa_l},
                      {"kappa_t", v.kappa_t}, {"kappa_w", v.kappa_w}, {"F_max", v.F_max}, {"eta_max", v.eta_max}};
    const BoomParams& bm = c.sim.duo.boom;
    root["boom"] = {{"n_links", bm.n_links},           {"total_length", bm.total_length},
                    {"link_mass", bm.link_mass},       {"link_inertia", bm.inertia()},
                    {"k_spring", bm.k_spring},         {"c_damper", bm.c_damper},
                    {"kappa_t_link", bm.kappa_t_link}, {"kappa_l_link", bm.kappa_l_link},
                    {"kappa_w_link", bm.kappa_w_link}};
    root["simulation"] = {
        {"dt", c.sim.duo.dt}, {"duration_cap", c.sim.duration_cap}, {"log_interval", c.sim.log_interval}};
    root["controller"] = json::parse(controller_to_json(c.sim.controller));
    const TrackingExperiment& t = c.tracking;
    root["tracking"] = {{"start", {t.start.x, t.start.y, t.start.theta}},
                        {"goal", {t.goal.x, t.goal.y, t.goal.theta}},
                        {"rho", t.rho},
                        {"v_ref", t.v_ref},
                        {"spacing", t.plan.spacing},
                        {"lateral_offset", t.plan.lateral_offset},
                        {"arrival_radius", t.plan.arrival_radius},
                        {"start_separation", t.start_separation}};
    json ctrl = json::array();
    for (auto type : c.sweep_controllers) ctrl.push_back(to_string(type));
    root["sweep"] = {{"rho", {c.sweep_rho.front(), c.sweep_rho.back(), c.sweep_rho.size()}},
                     {"v_ref", {c.sweep_v.front(), c.sweep_v.back(), c.sweep_v.size()}},
                     {"controllers", ctrl}};
    root["bench"] = {{"spills", c.bench.spill_counts},
                     {"agents", c.bench.fleet_sizes},
                     {"seeds", c.bench.seeds},
                     {"time_limit", c.bench.bnb.time_limit},
                     {"node_limit", c.bench.bnb.node_limit},
                     {"ils_iterations", c.bench.heuristic.ils_iterations},
                     {"obstacle_coverage", c.bench.obstacle_coverage}};
    root["mission"] = {{"spacing", c.mission_plan.spacing},
                       {"lateral_offset", c.mission_plan.lateral_offset},
                       {"arrival_radius", c.mission_plan.arrival_radius}};
    return root.dump(2) + "\n";
}

}  // namespace boomfleet
