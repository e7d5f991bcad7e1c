#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "boomfleet/geometry.hpp"
#include "boomfleet/scenario.hpp"

namespace boomfleet {

struct Cell {
    int cx = 0;
    int cy = 0;

    bool operator==(const Cell&) const = default;
};

class OccupancyGrid {
public:
    OccupancyGrid() = default;
    OccupancyGrid(int width, int height, Vec2 origin, double resolution);

    int width() const { return width_; }
    int height() const { return height_; }
    Vec2 origin() const { return origin_; }
    double resolution() const { return resolution_; }

    bool in_bounds(Cell c) const { return c.cx >= 0 && c.cy >= 0 && c.cx < width_ && c.cy < height_; }
    bool occupied(Cell c) const { return occupied_[index(c)] != 0; }
    void set_occupied(Cell c, bool value) { occupied_[index(c)] = value ? 1 : 0; }
    std::size_t index(Cell c) const { return static_cast<std::size_t>(c.cy) * width_ + c.cx; }
    Cell cell_at(std::size_t idx) const { return {static_cast<int>(idx % width_), static_cast<int>(idx / width_)}; }
    std::size_t size() const { return occupied_.size(); }
    std::size_t occupied_count() const;

    /// Cell containing p; points on the far bound edge map to the last cell.
    /// Returns nullopt outside the covered area.
    std::optional<Cell> cell_of(Vec2 p) const;
    Vec2 center_of(Cell c) const;
    Rect cell_rect(Cell c) const;

    /// True when p lies in a free cell of the grid.
    bool is_free(Vec2 p) const;

private:
    int width_ = 0;
    int height_ = 0;
    Vec2 origin_;
    double resolution_ = 1.0;
    std::vector<std::uint8_t> occupied_;
};

/// Conservative rasterization: a cell is occupied iff its square shares
/// positive area with an obstacle.
OccupancyGrid rasterize(const Workspace& workspace);

/// PGM (P5) image, occupied = 0, free = 255, first row is the top (max y).
void write_pgm(const OccupancyGrid& grid, const std::filesystem::path& path);

/// Cells reachable from `start` under the grid's move rules.
std::vector<std::uint8_t> reachable_cells(const OccupancyGrid& grid, Cell start);

}  // namespace boomfleet
