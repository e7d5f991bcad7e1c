#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "boomfleet/motion_graph.hpp"

namespace boomfleet {

// Edge-centric weighted-latency MILP. Binary f_i_j_v is 1 when edge (i, j)
// lies on the depot-to-v prefix of the route serving spill v; continuous
// o_j is the MTZ position of spill j on its route.
struct LinearTerm {
    double coef = 0.0;
    int var = 0;
};

enum class Sense { le, ge, eq };

struct Constraint {
    std::string name;
    std::vector<LinearTerm> terms;
    Sense sense = Sense::le;
    double rhs = 0.0;
};

struct Variable {
    std::string name;
    bool binary = true;
    double lower = 0.0;
    double upper = 1.0;
};

struct MilpModel {
    std::vector<Variable> variables;
    std::vector<LinearTerm> objective;
    std::vector<Constraint> constraints;

    int find(const std::string& name) const;
};

/// Number of f binaries and o continuous variables for p spills. Edges
/// leaving v itself cannot lie on the prefix ending at v, so f_v_j_v does
/// not exist: p * (p * p - p + 1) binaries.
inline long long milp_binary_count(long long p) { return p * (p * p - p + 1); }
inline long long milp_continuous_count(long long p) { return p; }

std::string f_name(int i, int j, int v);
std::string o_name(int j);

MilpModel build_milp(const MotionGraph& graph, int k);

/// CPLEX LP text: Minimize / Subject To / Bounds / Binaries / End.
std::string to_lp_text(const MilpModel& model);

/// Throws Error(io) on write failure.
void export_milp(const MotionGraph& graph, int k, const std::filesystem::path& path);

}  // namespace boomfleet
