#include "boomfleet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "boomfleet/error.hpp"
#include "boomfleet/grid.hpp"
#include "boomfleet/rng.hpp"

namespace boomfleet {

using nlohmann::json;

void Workspace::validate() const
{
    if (!(bounds.width() > 0.0) || !(bounds.height() > 0.0)) {
        throw Error(ErrorCode::invalid_workspace, "bounds must have positive area");
    }
    if (!(grid_resolution > 0.0)) throw Error(ErrorCode::invalid_workspace, "grid_resolution must be positive");
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
        if (!is_simple(obstacles[i])) {
            throw Error(ErrorCode::invalid_workspace, "obstacle " + std::to_string(i) + " is not a simple polygon");
        }
    }
}

void Scenario::validate() const
{
    workspace.validate();
    if (fleet_size < 1) throw Error(ErrorCode::invalid_scenario, "fleet_size must be at least 1");
    if (!(v_transit > 0.0) || !(v_encircle > 0.0)) throw Error(ErrorCode::invalid_scenario, "speeds must be positive");
    if (!(alpha_clean >= 0.0)) throw Error(ErrorCode::invalid_scenario, "alpha_clean must be non-negative");
    if (!(boom_length > 0.0)) throw Error(ErrorCode::invalid_scenario, "boom_length must be positive");
    for (std::size_t i = 0; i < spills.size(); ++i) {
        const Spill& s = spills[i];
        if (s.id != static_cast<int>(i) + 1) {
            throw Error(ErrorCode::invalid_scenario, "spill ids must be contiguous from 1 in list order");
        }
        if (!(s.volume >= 0.0) || !(s.perimeter >= 0.0)) {
            throw Error(ErrorCode::invalid_scenario, "spill " + std::to_string(s.id) + " has negative volume or perimeter");
        }
        if (!(s.risk > 0.0)) throw Error(ErrorCode::invalid_scenario, "spill " + std::to_string(s.id) + " needs risk > 0");
    }
}

double equivalent_perimeter(double volume, double thickness)
{
    const double area = volume / thickness;
    return 2.0 * std::sqrt(std::numbers::pi * area);
}

std::vector<Polygon> random_obstacle_field(std::uint64_t seed, const Rect& bounds, double resolution, double coverage,
                                           Vec2 keep_free, double keep_clear)
{
    Rng rng(seed);
    Workspace ws{bounds, {}, resolution};
    OccupancyGrid grid = rasterize(ws);
    const double target = coverage * static_cast<double>(grid.size());
    const Rect clear{{keep_free.x - keep_clear / 2, keep_free.y - keep_clear / 2},
                     {keep_free.x + keep_clear / 2, keep_free.y + keep_clear / 2}};
    const double span = std::min(bounds.width(), bounds.height());
    const double side_min = 0.05 * span;
    const double side_max = 0.15 * span;

    for (int attempt = 0; attempt < 10000 && static_cast<double>(grid.occupied_count()) < target; ++attempt) {
        const double w = rng.uniform(side_min, side_max);
        const double h = rng.uniform(side_min, side_max);
        const double x = rng.uniform(bounds.min.x, bounds.max.x - w);
        const double y = rng.uniform(bounds.min.y, bounds.max.y - h);
        const Rect r{{x, y}, {x + w, y + h}};
        const bool hits_clear = r.min.x < clear.max.x && r.max.x > clear.min.x && r.min.y < clear.max.y &&
                                r.max.y > clear.min.y;
        if (hits_clear) continue;
        ws.obstacles.push_back(Polygon{{{r.min.x, r.min.y}, {r.max.x, r.min.y}, {r.max.x, r.max.y}, {r.min.x, r.max.y}}});
        grid = rasterize(ws);
    }
    return ws.obstacles;
}

Scenario generate_random_scenario(std::uint64_t seed, int spill_count, int fleet_size, const ScenarioParams& params)
{
    if (spill_count < 0) throw Error(ErrorCode::invalid_scenario, "spill count must be non-negative");
    Scenario s;
    s.workspace = params.workspace;
    s.depot = params.depot;
    s.fleet_size = fleet_size;
    s.v_transit = params.v_transit;
    s.v_encircle = params.v_encircle;
    s.alpha_clean = params.alpha_clean;
    s.boom_length = params.boom_length;
    s.rng_seed = seed;
    s.validate();

    const OccupancyGrid grid = rasterize(s.workspace);
    const auto depot_cell = grid.cell_of(s.depot);
    if (!depot_cell || grid.occupied(*depot_cell)) throw Error(ErrorCode::placement_failure, "depot is not in free space");
    const auto reachable = reachable_cells(grid, *depot_cell);

    Rng rng(seed);
    const Rect& b = s.workspace.bounds;
    for (int i = 0; i < spill_count; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < params.max_attempts_per_spill; ++attempt) {
            const Vec2 p{rng.uniform(b.min.x, b.max.x), rng.uniform(b.min.y, b.max.y)};
            const auto c = grid.cell_of(p);
            if (!c || !reachable[grid.index(*c)]) continue;
            Spill sp;
            sp.id = i + 1;
            sp.centroid = p;
            sp.risk = rng.uniform(params.risk_min, params.risk_max);
            sp.volume = rng.uniform(params.volume_min, params.volume_max);
            sp.perimeter = equivalent_perimeter(sp.volume, params.slick_thickness);
            s.spills.push_back(sp);
            placed = true;
            break;
        }
        if (!placed) {
            throw Error(ErrorCode::placement_failure,
                        "could not place spill " + std::to_string(i + 1) + " after " +
                            std::to_string(params.max_attempts_per_spill) + " attempts");
        }
    }
    return s;
}

namespace {

json point_json(Vec2 p) { return json::array({p.x, p.y}); }

Vec2 point_from(const json& j)
{
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::invalid_scenario, "points are [x, y] arrays");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

std::string scenario_to_json(const Scenario& s)
{
    json obstacles = json::array();
    for (const auto& poly : s.workspace.obstacles) {
        json ring = json::array();
        for (const Vec2 v : poly.vertices) ring.push_back(point_json(v));
        obstacles.push_back(ring);
    }
    json spills = json::array();
    for (const auto& sp : s.spills) {
        spills.push_back({{"id", sp.id},
                          {"centroid", point_json(sp.centroid)},
                          {"volume", sp.volume},
                          {"perimeter", sp.perimeter},
                          {"risk", sp.risk}});
    }
    json j = {
        {"workspace",
         {{"bounds", {{"min", point_json(s.workspace.bounds.min)}, {"max", point_json(s.workspace.bounds.max)}}},
          {"obstacles", obstacles},
          {"grid_resolution", s.workspace.grid_resolution}}},
        {"depot", point_json(s.depot)},
        {"spills", spills},
        {"fleet_size", s.fleet_size},
        {"v_transit", s.v_transit},
        {"v_encircle", s.v_encircle},
        {"alpha_clean", s.alpha_clean},
        {"boom_length", s.boom_length},
        {"rng_seed", s.rng_seed},
    };
    return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text)
{
    Scenario s;
    try {
        const json j = json::parse(text);
        const json& ws = j.at("workspace");
        s.workspace.bounds = {point_from(ws.at("bounds").at("min")), point_from(ws.at("bounds").at("max"))};
        s.workspace.grid_resolution = ws.value("grid_resolution", 1.0);
        for (const auto& ring : ws.value("obstacles", json::array())) {
            Polygon poly;
            for (const auto& v : ring) poly.vertices.push_back(point_from(v));
            s.workspace.obstacles.push_back(std::move(poly));
        }
        s.depot = point_from(j.at("depot"));
        for (const auto& js : j.value("spills", json::array())) {
            Spill sp;
            sp.id = js.at("id").get<int>();
            sp.centroid = point_from(js.at("centroid"));
            sp.volume = js.at("volume").get<double>();
            sp.perimeter = js.at("perimeter").get<double>();
            sp.risk = js.at("risk").get<double>();
            s.spills.push_back(sp);
        }
        std::sort(s.spills.begin(), s.spills.end(), [](const Spill& a, const Spill& b) { return a.id < b.id; });
        s.fleet_size = j.value("fleet_size", 1);
        s.v_transit = j.at("v_transit").get<double>();
        s.v_encircle = j.at("v_encircle").get<double>();
        s.alpha_clean = j.value("alpha_clean", 0.0);
        s.boom_length = j.value("boom_length", 40.0);
        s.rng_seed = j.value("rng_seed", std::uint64_t{0});
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_scenario, std::string("malformed scenario JSON: ") + e.what());
    }
    s.validate();
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::io, "cannot open " + path.string());
    out << scenario_to_json(scenario);
    if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

}  // namespace boomfleet
