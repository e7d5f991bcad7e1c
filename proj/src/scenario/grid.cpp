#include "boomfleet/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>

#include "boomfleet/astar.hpp"
#include "boomfleet/error.hpp"

namespace boomfleet {

OccupancyGrid::OccupancyGrid(int width, int height, Vec2 origin, double resolution)
    : width_(width), height_(height), origin_(origin), resolution_(resolution),
      occupied_(static_cast<std::size_t>(width) * height, 0)
{
}

std::size_t OccupancyGrid::occupied_count() const
{
    return static_cast<std::size_t>(std::count(occupied_.begin(), occupied_.end(), std::uint8_t{1}));
}

std::optional<Cell> OccupancyGrid::cell_of(Vec2 p) const
{
    const double fx = (p.x - origin_.x) / resolution_;
    const double fy = (p.y - origin_.y) / resolution_;
    if (!(fx >= 0.0) || !(fy >= 0.0)) return std::nullopt;
    int cx = static_cast<int>(std::floor(fx));
    int cy = static_cast<int>(std::floor(fy));
    // far edge of the covered area belongs to the last cell
    if (cx == width_ && fx == static_cast<double>(width_)) cx = width_ - 1;
    if (cy == height_ && fy == static_cast<double>(height_)) cy = height_ - 1;
    const Cell c{cx, cy};
    if (!in_bounds(c)) return std::nullopt;
    return c;
}

Vec2 OccupancyGrid::center_of(Cell c) const
{
    return {origin_.x + (c.cx + 0.5) * resolution_, origin_.y + (c.cy + 0.5) * resolution_};
}

Rect OccupancyGrid::cell_rect(Cell c) const
{
    const Vec2 lo{origin_.x + c.cx * resolution_, origin_.y + c.cy * resolution_};
    return {lo, {lo.x + resolution_, lo.y + resolution_}};
}

bool OccupancyGrid::is_free(Vec2 p) const
{
    const auto c = cell_of(p);
    return c && !occupied(*c);
}

OccupancyGrid rasterize(const Workspace& workspace)
{
    workspace.validate();
    const double res = workspace.grid_resolution;
    const int w = std::max(1, static_cast<int>(std::ceil(workspace.bounds.width() / res - 1e-9)));
    const int h = std::max(1, static_cast<int>(std::ceil(workspace.bounds.height() / res - 1e-9)));
    OccupancyGrid grid(w, h, workspace.bounds.min, res);

    for (const auto& poly : workspace.obstacles) {
        Vec2 lo = poly.vertices.front();
        Vec2 hi = lo;
        for (const Vec2 v : poly.vertices) {
            lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
            hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
        }
        const int x0 = std::clamp(static_cast<int>(std::floor((lo.x - grid.origin().x) / res)), 0, w - 1);
        const int x1 = std::clamp(static_cast<int>(std::floor((hi.x - grid.origin().x) / res)), 0, w - 1);
        const int y0 = std::clamp(static_cast<int>(std::floor((lo.y - grid.origin().y) / res)), 0, h - 1);
        const int y1 = std::clamp(static_cast<int>(std::floor((hi.y - grid.origin().y) / res)), 0, h - 1);
        const double min_area = 1e-12 * res * res;
        for (int cy = y0; cy <= y1; ++cy) {
            for (int cx = x0; cx <= x1; ++cx) {
                const Cell c{cx, cy};
                if (grid.occupied(c)) continue;
                if (clipped_area(poly, grid.cell_rect(c)) > min_area) grid.set_occupied(c, true);
            }
        }
    }
    return grid;
}

void write_pgm(const OccupancyGrid& grid, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot open " + path.string());
    out << "P5\n" << grid.width() << ' ' << grid.height() << "\n255\n";
    std::vector<char> row(static_cast<std::size_t>(grid.width()));
    for (int cy = grid.height() - 1; cy >= 0; --cy) {
        for (int cx = 0; cx < grid.width(); ++cx) {
            row[cx] = static_cast<char>(grid.occupied({cx, cy}) ? 0 : 255);
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

std::vector<std::uint8_t> reachable_cells(const OccupancyGrid& grid, Cell start)
{
    std::vector<std::uint8_t> seen(grid.size(), 0);
    if (!grid.in_bounds(start) || grid.occupied(start)) return seen;
    std::deque<Cell> queue{start};
    seen[grid.index(start)] = 1;
    while (!queue.empty()) {
        const Cell c = queue.front();
        queue.pop_front();
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const Cell n{c.cx + dx, c.cy + dy};
                if (!grid.in_bounds(n) || grid.occupied(n) || seen[grid.index(n)]) continue;
                if (dx != 0 && dy != 0 && !diagonal_allowed(grid, c, dx, dy)) continue;
                seen[grid.index(n)] = 1;
                queue.push_back(n);
            }
        }
    }
    return seen;
}

}  // namespace boomfleet
