#include "boomfleet/mission.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "boomfleet/astar.hpp"
#include "boomfleet/error.hpp"
#include "boomfleet/format.hpp"
#include "boomfleet/motion_graph.hpp"

namespace boomfleet {

namespace {

class CirclePath : public PathCurve {
public:
    CirclePath(Vec2 centre, double radius, double phi0) : c_(centre), r_(radius), phi0_(phi0) {}
    double length() const override { return 2.0 * std::numbers::pi * r_; }
    Pose at(double s) const override
    {
        const double phi = phi0_ + std::clamp(s, 0.0, length()) / r_;
        return {c_.x + r_ * std::cos(phi), c_.y + r_ * std::sin(phi), phi + std::numbers::pi / 2};
    }

private:
    Vec2 c_;
    double r_;
    double phi0_;
};

const Spill& spill_by_id(const Scenario& s, int id)
{
    for (const auto& sp : s.spills) {
        if (sp.id == id) return sp;
    }
    throw Error(ErrorCode::invalid_routeset, "route names unknown spill " + std::to_string(id));
}

// First point where the polyline enters the disc (c, r); the whole polyline when it never does.
std::vector<Vec2> cut_at_disc(const std::vector<Vec2>& pts, Vec2 c, double r)
{
    if (r <= 0.0) return pts;
    std::vector<Vec2> out{pts.front()};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const Vec2 a = pts[i - 1];
        const Vec2 b = pts[i];
        if (norm(b - c) > r) {
            out.push_back(b);
            continue;
        }
        // |a + t (b - a) - c| = r, smallest t in [0, 1]
        const Vec2 d = b - a;
        const Vec2 f = a - c;
        const double qa = dot(d, d);
        const double qb = 2.0 * dot(f, d);
        const double qc = dot(f, f) - r * r;
        double t = 0.0;
        if (qa > 0.0 && qc > 0.0) t = (-qb - std::sqrt(std::max(qb * qb - 4.0 * qa * qc, 0.0))) / (2.0 * qa);
        out.push_back(a + std::clamp(t, 0.0, 1.0) * d);
        return out;
    }
    return out;
}

void push_unique(std::vector<Vec2>& pts, Vec2 p)
{
    if (pts.empty() || norm(p - pts.back()) > 1e-9) pts.push_back(p);
}

double encircle_radius(const Spill& s) { return s.perimeter / (2.0 * std::numbers::pi); }

SetpointPlan build_plan(const Scenario& scenario, const OccupancyGrid& grid, const std::vector<int>& route,
                        const PlanOptions& options, std::vector<Vec2>* centre_line, std::vector<int>* release_index)
{
    SetpointPlan plan;
    plan.u_cruise = scenario.v_transit;
    plan.arrival_radius = options.arrival_radius;
    plan.lateral_offset = options.lateral_offset;
    const double boom = scenario.boom_length;

    Vec2 cur = scenario.depot;
    Vec2 prev_centre = scenario.depot;
    double prev_radius = 0.0;
    for (int id : route) {
        const Spill& sp = spill_by_id(scenario, id);
        const double radius = encircle_radius(sp);
        const std::vector<Vec2> path = shortest_path_polyline(grid, prev_centre, sp.centroid);

        std::vector<Vec2> leg{cur};
        std::size_t first = 1;
        while (first < path.size() && norm(path[first] - prev_centre) < prev_radius) ++first;
        for (std::size_t i = first; i < path.size(); ++i) push_unique(leg, path[i]);
        if (leg.size() == 1) push_unique(leg, sp.centroid);
        leg = cut_at_disc(leg, sp.centroid, radius);
        std::vector<Vec2> clean;
        for (Vec2 p : leg) push_unique(clean, p);

        if (clean.size() >= 2) {
            const PolylinePath transit(clean);
            append_path(plan, transit, options.spacing, scenario.v_transit, 0.0, boom);
            if (centre_line) {
                for (Vec2 p : clean) push_unique(*centre_line, p);
            }
        } else if (plan.left.empty()) {
            // already at the spill: one setpoint so the dwell has somewhere to live
            const PolylinePath stay({clean.front(), clean.front() + Vec2{1e-6, 0.0}});
            append_path(plan, stay, options.spacing, scenario.v_transit, 0.0, boom);
        }
        cur = clean.back();

        const double t_clean = clean_time(scenario, sp);
        if (radius > 0.0) {
            const Vec2 rel = cur - sp.centroid;
            const double phi0 = norm(rel) > 0.0 ? std::atan2(rel.y, rel.x) : 0.0;
            const CirclePath loop(sp.centroid, radius, phi0);
            // the vessels straddle the loop no wider than its radius
            append_path(plan, loop, std::min(options.spacing, loop.length() / 8.0), scenario.v_encircle, t_clean, boom,
                        std::min(options.lateral_offset, radius));
            if (centre_line) {
                for (int i = 0; i <= 64; ++i) {
                    const Pose q = loop.at(loop.length() * i / 64.0);
                    push_unique(*centre_line, {q.x, q.y});
                }
            }
            cur = {loop.at(loop.length()).x, loop.at(loop.length()).y};
        } else {
            plan.left.back().dwell = t_clean;
            plan.right.back().dwell = t_clean;
        }
        if (release_index) release_index->push_back(static_cast<int>(plan.left.size()) - 1);
        prev_centre = sp.centroid;
        prev_radius = radius;
    }
    return plan;
}

}  // namespace

SetpointPlan mission_plan(const Scenario& scenario, const OccupancyGrid& grid, const std::vector<int>& route,
                          const PlanOptions& options, std::vector<Vec2>* centre_line)
{
    return build_plan(scenario, grid, route, options, centre_line, nullptr);
}

MissionResult run_mission(const Scenario& scenario, const MissionConfig& config)
{
    scenario.validate();
    const OccupancyGrid grid = rasterize(scenario.workspace);
    const MotionGraph graph = build_motion_graph(scenario, grid);

    MissionResult result;
    result.solve = solve_routing(graph, scenario.fleet_size, config.solver);
    const DamageResult planned = evaluate_damage(graph, result.solve.best);
    result.planned_damage = planned.damage;

    const int k = static_cast<int>(result.solve.best.routes.size());
    result.duos.resize(static_cast<std::size_t>(k));
    std::vector<std::vector<int>> release(static_cast<std::size_t>(k));
    std::vector<std::string> failures(static_cast<std::size_t>(k));

#pragma omp parallel for schedule(dynamic, 1)
    for (int a = 0; a < k; ++a) {
        DuoExecution& duo = result.duos[a];
        duo.route = result.solve.best.routes[a];
        if (duo.route.empty()) continue;
        try {
            duo.plan = build_plan(scenario, grid, duo.route, config.plan, &duo.centre_line, &release[a]);
            const Setpoint& first = duo.plan.left.front();
            const Setpoint& first_r = duo.plan.right.front();
            const double heading = first.heading;
            VesselState v1{first.p.x, first.p.y, heading, 0.0, 0.0, 0.0};
            VesselState v2{first_r.p.x, first_r.p.y, heading, 0.0, 0.0, 0.0};
            SimulationOptions sim = config.sim;
            // long routes get at least twice their planned duration
            sim.duration_cap = std::max(sim.duration_cap, 2.0 * planned.completion[duo.route.back()] + 120.0);
            duo.run = run_plan(duo.plan, make_duo(v1, v2, sim.duo), sim);
        } catch (const std::exception& e) {
            failures[a] = e.what();
        }
    }
    for (const auto& f : failures) {
        if (!f.empty()) throw Error(ErrorCode::numeric, "mission duo failed: " + f);
    }

    for (int a = 0; a < k; ++a) {
        const DuoExecution& duo = result.duos[a];
        if (duo.route.empty()) continue;
        result.complete = result.complete && duo.run.complete;
        for (std::size_t i = 0; i < duo.route.size(); ++i) {
            const int id = duo.route[i];
            const Spill& sp = spill_by_id(scenario, id);
            SpillOutcome o;
            o.spill = id;
            o.duo = a;
            o.planned_completion = planned.completion[id];
            o.realized_completion = duo.run.released[release[a][i]];
            o.transit_lower_bound = norm(sp.centroid - scenario.depot) / scenario.v_transit;
            result.spills.push_back(o);
            const double t = o.realized_completion >= 0.0 ? o.realized_completion : duo.run.final_state.t;
            result.realized_damage += sp.risk * t;
        }
    }
    std::sort(result.spills.begin(), result.spills.end(),
              [](const SpillOutcome& x, const SpillOutcome& y) { return x.spill < y.spill; });
    return result;
}

std::string mission_csv(const Scenario& scenario, const MissionResult& result)
{
    std::ostringstream os;
    os << "spill,duo,planned_completion,realized_completion,transit_lower_bound,risk\n";
    for (const auto& o : result.spills) {
        os << o.spill << ',' << o.duo << ',' << format_double(o.planned_completion) << ','
           << format_double(o.realized_completion) << ',' << format_double(o.transit_lower_bound) << ','
           << format_double(spill_by_id(scenario, o.spill).risk) << '\n';
    }
    return os.str();
}

}  // namespace boomfleet
