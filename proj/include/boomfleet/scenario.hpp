#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "boomfleet/geometry.hpp"

namespace boomfleet {

struct Workspace {
    Rect bounds;
    std::vector<Polygon> obstacles;
    double grid_resolution = 1.0;  // m per cell

    /// Throws Error(invalid_workspace) on zero-area bounds, non-simple obstacles or bad resolution.
    void validate() const;
};

struct Spill {
    int id = 0;
    Vec2 centroid;
    double volume = 0.0;     // m^3
    double perimeter = 0.0;  // m
    double risk = 1.0;       // damage weight per second
};

struct Scenario {
    Workspace workspace;
    Vec2 depot;
    std::vector<Spill> spills;
    int fleet_size = 1;
    double v_transit = 1.0;    // m/s
    double v_encircle = 1.0;   // m/s
    double alpha_clean = 0.0;  // s per m^3
    double boom_length = 40.0; // m
    std::uint64_t rng_seed = 0;

    /// Checks the scalar invariants and spill id contiguity. Free-space
    /// membership is checked against a grid in `validate_against`.
    void validate() const;
};

/// Cleaning dwell of a spill.
inline double clean_time(const Scenario& s, const Spill& spill) { return s.alpha_clean * spill.volume; }

// Sampling ranges for random scenarios. Defaults are artifact choices.
struct ScenarioParams {
    Workspace workspace{Rect{{0.0, 0.0}, {100.0, 100.0}}, {}, 1.0};
    Vec2 depot{2.0, 2.0};
    double risk_min = 1.0;
    double risk_max = 10.0;
    double volume_min = 1.0;
    double volume_max = 50.0;
    // Perimeter of a circular slick whose area is volume / thickness.
    double slick_thickness = 1.0;
    double v_transit = 1.0;
    double v_encircle = 1.0;
    double alpha_clean = 1.0;
    double boom_length = 40.0;
    int max_attempts_per_spill = 10000;
};

/// Deterministic for a fixed seed. Spills are rejection-sampled in cells
/// that are free and connected to the depot.
Scenario generate_random_scenario(std::uint64_t seed, int spill_count, int fleet_size,
                                  const ScenarioParams& params = {});

/// Axis-aligned rectangular obstacles added until `coverage` of the bounds
/// area is blocked (overlaps counted once, measured on the grid). A square
/// of side `keep_clear` around `keep_free` stays empty.
std::vector<Polygon> random_obstacle_field(std::uint64_t seed, const Rect& bounds, double resolution,
                                           double coverage, Vec2 keep_free, double keep_clear = 6.0);

/// Perimeter of a circle with area volume / thickness.
double equivalent_perimeter(double volume, double thickness);

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

}  // namespace boomfleet
