#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace lp {

struct Row {
    std::string name;
    std::map<std::string, double> coef;
    std::string sense;  // "<=", ">=", "="
    double rhs = 0.0;
};

struct Model {
    std::map<std::string, double> objective;
    std::vector<Row> rows;
    std::map<std::string, std::pair<double, double>> bounds;
    std::vector<std::string> binaries;
};

// Reads the subset of CPLEX LP text used by the exporter. Throws on
// anything it does not understand.
Model parse(const std::string& text);

// Calls `visit` with every 0/1 assignment of the binaries for which some
// values of the continuous variables (within their bounds) satisfy all rows.
void enumerate_feasible(const Model& m, const std::function<void(const std::map<std::string, int>&)>& visit);

}  // namespace lp
