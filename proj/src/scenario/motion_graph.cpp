#include "boomfleet/motion_graph.hpp"

#include <limits>

#include "boomfleet/astar.hpp"
#include "boomfleet/error.hpp"

namespace boomfleet {

MotionGraph::MotionGraph(int spill_count)
    : n_(spill_count + 1),
      cost_(static_cast<std::size_t>(n_) * n_, std::numeric_limits<double>::infinity()),
      risk_(static_cast<std::size_t>(n_), 0.0)
{
    for (int i = 0; i < n_; ++i) cost_[static_cast<std::size_t>(i) * n_ + i] = 0.0;
}

namespace {

std::vector<Vec2> vertex_points(const Scenario& s)
{
    std::vector<Vec2> pts{s.depot};
    for (const auto& sp : s.spills) pts.push_back(sp.centroid);
    return pts;
}

// Distance for pair (i, j) with i < j; wraps unreachable errors with the spill id.
double pair_distance(const OccupancyGrid& grid, const std::vector<Vec2>& pts, int i, int j)
{
    try {
        return shortest_path_length(grid, pts[i], pts[j]);
    } catch (const UnreachableError&) {
        throw UnreachableError("spill " + std::to_string(j) + " is unreachable from vertex " + std::to_string(i), j);
    }
}

MotionGraph assemble(const Scenario& s, const std::vector<double>& dist)
{
    const int n = static_cast<int>(s.spills.size()) + 1;
    MotionGraph g(n - 1);
    for (int j = 1; j < n; ++j) {
        const Spill& sp = s.spills[j - 1];
        g.set_risk(j, sp.risk);
        const double service = sp.perimeter / s.v_encircle + clean_time(s, sp);
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            g.set_cost(i, j, dist[static_cast<std::size_t>(i) * n + j] / s.v_transit + service);
        }
    }
    return g;
}

}  // namespace

std::vector<double> transit_distances(const Scenario& scenario, const OccupancyGrid& grid, bool parallel)
{
    const auto pts = vertex_points(scenario);
    const int n = static_cast<int>(pts.size());
    std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);

    if (parallel) {
        bool failed = false;
        UnreachableError first_error("", -1);
        int first_row = n;
#pragma omp parallel for schedule(dynamic, 1)
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                try {
                    dist[static_cast<std::size_t>(i) * n + j] = pair_distance(grid, pts, i, j);
                } catch (const UnreachableError& e) {
#pragma omp critical(boomfleet_graph_error)
                    {
                        // keep the error a serial run would raise first
                        if (!failed || i < first_row) {
                            failed = true;
                            first_row = i;
                            first_error = e;
                        }
                    }
                    break;
                }
            }
        }
        if (failed) throw first_error;
    } else {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) dist[static_cast<std::size_t>(i) * n + j] = pair_distance(grid, pts, i, j);
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) dist[static_cast<std::size_t>(i) * n + j] = dist[static_cast<std::size_t>(j) * n + i];
    }
    return dist;
}

MotionGraph build_motion_graph(const Scenario& scenario, const OccupancyGrid& grid)
{
    scenario.validate();
    return assemble(scenario, transit_distances(scenario, grid, true));
}

MotionGraph build_motion_graph_serial(const Scenario& scenario, const OccupancyGrid& grid)
{
    scenario.validate();
    return assemble(scenario, transit_distances(scenario, grid, false));
}

MotionGraph build_motion_graph(const Scenario& scenario)
{
    return build_motion_graph(scenario, rasterize(scenario.workspace));
}

}  // namespace boomfleet
