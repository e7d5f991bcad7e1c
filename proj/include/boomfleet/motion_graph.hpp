#pragma once

#include <vector>

#include "boomfleet/grid.hpp"
#include "boomfleet/scenario.hpp"

namespace boomfleet {

/// Depot is vertex 0, spill id i is vertex i. Edge costs are seconds;
/// edges into the depot are never used and hold +inf.
class MotionGraph {
public:
    MotionGraph() = default;
    explicit MotionGraph(int spill_count);

    int vertex_count() const { return n_; }
    int spill_count() const { return n_ - 1; }
    double cost(int i, int j) const { return cost_[static_cast<std::size_t>(i) * n_ + j]; }
    void set_cost(int i, int j, double c) { cost_[static_cast<std::size_t>(i) * n_ + j] = c; }
    double risk(int v) const { return risk_[v]; }
    void set_risk(int v, double r) { risk_[v] = r; }
    const std::vector<double>& risks() const { return risk_; }

private:
    int n_ = 1;
    std::vector<double> cost_;
    std::vector<double> risk_;  // risk_[0] is unused (0)
};

/// c_ij = d(i, j) / v_transit + C(j) / v_encircle + alpha_clean * V(j), where
/// d is the grid shortest-path length between centroids. Rows are computed
/// in parallel; the result is identical to build_motion_graph_serial.
MotionGraph build_motion_graph(const Scenario& scenario, const OccupancyGrid& grid);
MotionGraph build_motion_graph_serial(const Scenario& scenario, const OccupancyGrid& grid);
MotionGraph build_motion_graph(const Scenario& scenario);

/// Pairwise transit distances between depot/spill points (symmetric, metres).
std::vector<double> transit_distances(const Scenario& scenario, const OccupancyGrid& grid, bool parallel = true);

}  // namespace boomfleet
