#pragma once

#include <cstdint>
#include <vector>

#include "boomfleet/grid.hpp"
#include "boomfleet/motion_graph.hpp"
#include "boomfleet/routing.hpp"

namespace oracle {

// Plain Dijkstra over the grid with its own neighbour rule; returns the
// (straight, diagonal) move counts of a shortest path, or {-1, -1}.
struct Moves {
    std::int64_t straight = -1;
    std::int64_t diagonal = -1;
    double length(double res) const;
};
Moves dijkstra(const boomfleet::OccupancyGrid& grid, boomfleet::Cell a, boomfleet::Cell b);

// Damage of a route set by direct prefix recomputation.
double prefix_damage(const boomfleet::MotionGraph& g, const std::vector<std::vector<int>>& routes);

// Minimum damage of one agent over every permutation of `spills`.
double best_permutation(const boomfleet::MotionGraph& g, std::vector<int> spills);

// Every route set with at most k non-empty routes, in canonical form.
std::vector<boomfleet::RouteSet> all_route_sets(int p, int k);

// Random dense motion graph with costs in [lo, hi] and risks in [1, 10].
boomfleet::MotionGraph random_graph(std::uint64_t seed, int p, double lo = 1.0, double hi = 50.0);

}  // namespace oracle

#include "boomfleet/geometry.hpp"

namespace oracle {

// Minimum Dubins length over the six words, from the closed-form segment
// formulas; each candidate is integrated forward and kept only when it
// lands on the goal pose.
double dubins_min_length(boomfleet::Pose start, boomfleet::Pose goal, double rho);

// Endpoint of driving `word` with the given segment lengths (metres).
boomfleet::Pose drive(boomfleet::Pose start, double rho, const char* word, const double seg[3]);

}  // namespace oracle
