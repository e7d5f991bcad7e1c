#pragma once

#include <cstdint>
#include <vector>

#include "boomfleet/geometry.hpp"
#include "boomfleet/grid.hpp"

namespace boomfleet {

// Path cost kept as exact move counts so that any search order yields the
// same double for the same optimum.
struct GridCost {
    std::int64_t straight = 0;
    std::int64_t diagonal = 0;

    double value() const { return static_cast<double>(straight) + static_cast<double>(diagonal) * std::numbers::sqrt2; }
    bool operator==(const GridCost&) const = default;
};

/// Move rules shared by every grid search: 8-connected; a diagonal step is
/// refused only when both orthogonal neighbours it passes are occupied.
bool diagonal_allowed(const OccupancyGrid& grid, Cell from, int dx, int dy);

struct GridPath {
    GridCost cost;
    std::vector<Cell> cells;  // from start to goal inclusive
};

/// A* with the octile heuristic. Throws Error(point_in_obstacle) when an end
/// cell is blocked or outside the grid, UnreachableError when no path exists.
GridPath astar_search(const OccupancyGrid& grid, Cell start, Cell goal);

/// Length in metres of the shortest 8-connected path between the cells of a and b.
double shortest_path_length(const OccupancyGrid& grid, Vec2 a, Vec2 b);

/// The same path as a polyline: a, interior cell centres, b.
std::vector<Vec2> shortest_path_polyline(const OccupancyGrid& grid, Vec2 a, Vec2 b);

double octile_distance(Cell a, Cell b);

}  // namespace boomfleet
