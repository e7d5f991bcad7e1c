#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

#include "boomfleet/error.hpp"
#include "boomfleet/routing.hpp"

namespace boomfleet {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct DpTable {
    int m = 0;
    std::vector<int> ids;
    std::vector<double> weight;  // assigned risk inside each subset
    std::vector<double> value;   // value[mask * m + j]
    double total = 0.0;

    double& at(std::uint32_t mask, int j) { return value[static_cast<std::size_t>(mask) * m + j]; }
    double at(std::uint32_t mask, int j) const { return value[static_cast<std::size_t>(mask) * m + j]; }
};

DpTable make_table(const MotionGraph& graph, const std::vector<int>& spills)
{
    DpTable t;
    t.ids = spills;
    std::sort(t.ids.begin(), t.ids.end());
    t.m = static_cast<int>(t.ids.size());
    const std::uint32_t full = (1u << t.m);
    t.weight.assign(full, 0.0);
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        const int low = std::countr_zero(mask);
        t.weight[mask] = t.weight[mask & (mask - 1)] + graph.risk(t.ids[low]);
    }
    t.total = t.weight[full - 1];
    t.value.assign(static_cast<std::size_t>(full) * t.m, inf);
    for (int j = 0; j < t.m; ++j) t.at(1u << j, j) = graph.cost(0, t.ids[j]) * t.total;
    return t;
}

// Best predecessor of j for the subset `mask` that ends at j.
inline std::pair<double, int> relax(const MotionGraph& graph, const DpTable& t, std::uint32_t mask, int j)
{
    const std::uint32_t prev = mask ^ (1u << j);
    const double remaining = t.total - t.weight[prev];
    double best = inf;
    int arg = -1;
    for (std::uint32_t rest = prev; rest; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        const double cand = t.at(prev, v) + graph.cost(t.ids[v], t.ids[j]) * remaining;
        if (cand < best) {
            best = cand;
            arg = v;
        }
    }
    return {best, arg};
}

inline void fill_subset(const MotionGraph& graph, DpTable& t, std::uint32_t mask)
{
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        t.at(mask, j) = relax(graph, t, mask, j).first;
    }
}

std::vector<int> backtrack(const MotionGraph& graph, const DpTable& t)
{
    const std::uint32_t full = (1u << t.m) - 1;
    int last = 0;
    for (int j = 1; j < t.m; ++j) {
        if (t.at(full, j) < t.at(full, last)) last = j;
    }
    std::vector<int> order(static_cast<std::size_t>(t.m));
    std::uint32_t mask = full;
    for (int pos = t.m - 1; pos > 0; --pos) {
        order[pos] = t.ids[last];
        const int prev = relax(graph, t, mask, last).second;
        mask ^= (1u << last);
        last = prev;
    }
    order[0] = t.ids[last];
    return order;
}

void check_cap(const std::vector<int>& spills, int dp_cap)
{
    if (static_cast<int>(spills.size()) > dp_cap || spills.size() > 30) {
        throw Error(ErrorCode::capacity, "route of " + std::to_string(spills.size()) +
                                             " spills exceeds the exact-ordering cap of " + std::to_string(dp_cap));
    }
}

}  // namespace

std::vector<int> dp_order_serial(const MotionGraph& graph, const std::vector<int>& spills, int dp_cap)
{
    check_cap(spills, dp_cap);
    if (spills.size() < 2) return spills;
    DpTable t = make_table(graph, spills);
    const std::uint32_t full = 1u << t.m;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        if (std::popcount(mask) >= 2) fill_subset(graph, t, mask);
    }
    return backtrack(graph, t);
}

std::vector<int> dp_order(const MotionGraph& graph, const std::vector<int>& spills, int dp_cap)
{
    check_cap(spills, dp_cap);
    if (spills.size() < 2) return spills;
    DpTable t = make_table(graph, spills);
    const std::uint32_t full = 1u << t.m;
    if (t.m < 10) {
        for (std::uint32_t mask = 1; mask < full; ++mask) {
            if (std::popcount(mask) >= 2) fill_subset(graph, t, mask);
        }
        return backtrack(graph, t);
    }
    std::vector<std::vector<std::uint32_t>> layers(static_cast<std::size_t>(t.m) + 1);
    for (std::uint32_t mask = 1; mask < full; ++mask) layers[std::popcount(mask)].push_back(mask);
    for (int size = 2; size <= t.m; ++size) {
        const auto& layer = layers[size];
        const std::int64_t count = static_cast<std::int64_t>(layer.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < count; ++i) fill_subset(graph, t, layer[i]);
    }
    return backtrack(graph, t);
}

}  // namespace boomfleet
