#include "boomfleet/astar.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "boomfleet/error.hpp"

namespace boomfleet {

bool diagonal_allowed(const OccupancyGrid& grid, Cell from, int dx, int dy)
{
    const Cell side_a{from.cx + dx, from.cy};
    const Cell side_b{from.cx, from.cy + dy};
    const bool a_blocked = !grid.in_bounds(side_a) || grid.occupied(side_a);
    const bool b_blocked = !grid.in_bounds(side_b) || grid.occupied(side_b);
    return !(a_blocked && b_blocked);
}

double octile_distance(Cell a, Cell b)
{
    const double dx = std::abs(a.cx - b.cx);
    const double dy = std::abs(a.cy - b.cy);
    return std::max(dx, dy) + (std::numbers::sqrt2 - 1.0) * std::min(dx, dy);
}

GridPath astar_search(const OccupancyGrid& grid, Cell start, Cell goal)
{
    if (!grid.in_bounds(start) || grid.occupied(start)) {
        throw Error(ErrorCode::point_in_obstacle, "start cell is blocked or outside the grid");
    }
    if (!grid.in_bounds(goal) || grid.occupied(goal)) {
        throw Error(ErrorCode::point_in_obstacle, "goal cell is blocked or outside the grid");
    }
    if (start == goal) return {{}, {start}};

    const std::size_t n = grid.size();
    std::vector<GridCost> g(n, GridCost{std::numeric_limits<std::int64_t>::max() / 4, 0});
    std::vector<std::int64_t> parent(n, -1);
    std::vector<std::uint8_t> closed(n, 0);

    struct Entry {
        double f;
        double g;
        std::size_t idx;
    };
    // lower f first; among equal f prefer larger g (deeper), then lower index
    const auto worse = [](const Entry& a, const Entry& b) {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return a.idx > b.idx;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);

    const std::size_t s = grid.index(start);
    const std::size_t t = grid.index(goal);
    g[s] = {};
    open.push({octile_distance(start, goal), 0.0, s});

    while (!open.empty()) {
        const Entry top = open.top();
        open.pop();
        if (closed[top.idx]) continue;
        closed[top.idx] = 1;
        if (top.idx == t) break;
        const Cell c = grid.cell_at(top.idx);
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const Cell nb{c.cx + dx, c.cy + dy};
                if (!grid.in_bounds(nb) || grid.occupied(nb)) continue;
                const bool diag = dx != 0 && dy != 0;
                if (diag && !diagonal_allowed(grid, c, dx, dy)) continue;
                const std::size_t ni = grid.index(nb);
                if (closed[ni]) continue;
                GridCost cand = g[top.idx];
                if (diag) ++cand.diagonal;
                else ++cand.straight;
                if (cand.value() < g[ni].value()) {
                    g[ni] = cand;
                    parent[ni] = static_cast<std::int64_t>(top.idx);
                    open.push({cand.value() + octile_distance(nb, goal), cand.value(), ni});
                }
            }
        }
    }
    if (!closed[t]) throw UnreachableError("no grid path between the requested cells");

    GridPath path;
    path.cost = g[t];
    for (std::int64_t i = static_cast<std::int64_t>(t); i >= 0; i = parent[i]) {
        path.cells.push_back(grid.cell_at(static_cast<std::size_t>(i)));
    }
    std::reverse(path.cells.begin(), path.cells.end());
    return path;
}

namespace {

std::pair<Cell, Cell> end_cells(const OccupancyGrid& grid, Vec2 a, Vec2 b)
{
    const auto ca = grid.cell_of(a);
    const auto cb = grid.cell_of(b);
    if (!ca || grid.occupied(*ca)) throw Error(ErrorCode::point_in_obstacle, "start point is not in free space");
    if (!cb || grid.occupied(*cb)) throw Error(ErrorCode::point_in_obstacle, "goal point is not in free space");
    return {*ca, *cb};
}

}  // namespace

double shortest_path_length(const OccupancyGrid& grid, Vec2 a, Vec2 b)
{
    const auto [ca, cb] = end_cells(grid, a, b);
    return astar_search(grid, ca, cb).cost.value() * grid.resolution();
}

std::vector<Vec2> shortest_path_polyline(const OccupancyGrid& grid, Vec2 a, Vec2 b)
{
    const auto [ca, cb] = end_cells(grid, a, b);
    const GridPath path = astar_search(grid, ca, cb);
    std::vector<Vec2> pts;
    pts.push_back(a);
    for (std::size_t i = 1; i + 1 < path.cells.size(); ++i) pts.push_back(grid.center_of(path.cells[i]));
    if (!(a == b)) pts.push_back(b);
    return pts;
}

}  // namespace boomfleet
