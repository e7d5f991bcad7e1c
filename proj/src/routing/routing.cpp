#include "boomfleet/routing.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>

#include "boomfleet/error.hpp"
#include "boomfleet/rng.hpp"

namespace boomfleet {

void check_partition(const MotionGraph& graph, const RouteSet& routes)
{
    const int p = graph.spill_count();
    std::vector<int> seen(static_cast<std::size_t>(p) + 1, 0);
    for (const auto& route : routes.routes) {
        for (const int s : route) {
            if (s < 1 || s > p) throw Error(ErrorCode::invalid_routeset, "route contains unknown vertex " + std::to_string(s));
            if (seen[s]++) throw Error(ErrorCode::invalid_routeset, "spill " + std::to_string(s) + " is served twice");
        }
    }
    for (int s = 1; s <= p; ++s) {
        if (!seen[s]) throw Error(ErrorCode::invalid_routeset, "spill " + std::to_string(s) + " is not served");
    }
}

double route_damage(const MotionGraph& graph, const std::vector<int>& route)
{
    double t = 0.0;
    double damage = 0.0;
    int prev = 0;
    for (const int s : route) {
        t += graph.cost(prev, s);
        damage += graph.risk(s) * t;
        prev = s;
    }
    return damage;
}

DamageResult evaluate_damage(const MotionGraph& graph, const RouteSet& routes)
{
    check_partition(graph, routes);
    DamageResult r;
    r.completion.assign(static_cast<std::size_t>(graph.spill_count()) + 1, 0.0);
    for (const auto& route : routes.routes) {
        double t = 0.0;
        int prev = 0;
        for (const int s : route) {
            t += graph.cost(prev, s);
            r.completion[s] = t;
            prev = s;
        }
    }
    // summed in spill-id order so agent order cannot change the result
    for (int s = 1; s <= graph.spill_count(); ++s) r.damage += graph.risk(s) * r.completion[s];
    return r;
}

namespace {

// Returns the index into `candidates` with the best risk/time ratio from `from`.
std::size_t best_ratio(const MotionGraph& graph, int from, const std::vector<int>& candidates)
{
    std::size_t best = 0;
    double best_ratio = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const int u = candidates[i];
        const double c = graph.cost(from, u);
        const double ratio = c > 0.0 ? graph.risk(u) / c : std::numeric_limits<double>::infinity();
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best = i;
        }
    }
    return best;
}

}  // namespace

RouteSet greedy_assign(const MotionGraph& graph, int k)
{
    if (k < 1) throw Error(ErrorCode::config, "fleet size must be at least 1");
    RouteSet rs;
    rs.routes.resize(static_cast<std::size_t>(k));
    std::vector<int> unassigned;
    for (int s = 1; s <= graph.spill_count(); ++s) unassigned.push_back(s);

    using Entry = std::pair<double, int>;  // accumulated time, agent index
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    for (int a = 0; a < k; ++a) queue.push({0.0, a});
    std::vector<int> last(static_cast<std::size_t>(k), 0);

    while (!unassigned.empty()) {
        const auto [time, agent] = queue.top();
        queue.pop();
        const std::size_t pick = best_ratio(graph, last[agent], unassigned);
        const int u = unassigned[pick];
        unassigned.erase(unassigned.begin() + static_cast<std::ptrdiff_t>(pick));
        rs.routes[agent].push_back(u);
        const double t = time + graph.cost(last[agent], u);
        last[agent] = u;
        queue.push({t, agent});
    }
    return rs;
}

std::vector<int> greedy_order(const MotionGraph& graph, const std::vector<int>& spills)
{
    std::vector<int> rest(spills);
    std::sort(rest.begin(), rest.end());
    std::vector<int> order;
    int last = 0;
    while (!rest.empty()) {
        const std::size_t pick = best_ratio(graph, last, rest);
        last = rest[pick];
        order.push_back(last);
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return order;
}

RouteSet dp_refine(const MotionGraph& graph, const RouteSet& routes, int dp_cap)
{
    RouteSet out = routes;
    for (auto& route : out.routes) {
        if (route.size() < 2 || static_cast<int>(route.size()) > dp_cap) continue;
        auto ordered = dp_order(graph, route, dp_cap);
        if (route_damage(graph, ordered) <= route_damage(graph, route)) route = std::move(ordered);
    }
    return out;
}

IlsResult ils_refine(const MotionGraph& graph, const RouteSet& initial, int iterations, std::uint64_t seed, int dp_cap)
{
    check_partition(graph, initial);
    IlsResult result;
    result.best = initial;
    const int p = graph.spill_count();
    const std::size_t k = initial.routes.size();

    std::vector<double> damage(k);
    double total = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
        damage[a] = route_damage(graph, initial.routes[a]);
        total += damage[a];
    }
    result.trace.reserve(static_cast<std::size_t>(std::max(iterations, 0)));
    if (k < 2 || p < 2) {
        result.trace.assign(static_cast<std::size_t>(std::max(iterations, 0)), total);
        return result;
    }

    std::vector<int> owner(static_cast<std::size_t>(p) + 1, -1);
    for (std::size_t a = 0; a < k; ++a) {
        for (const int s : result.best.routes[a]) owner[s] = static_cast<int>(a);
    }
    const auto reorder = [&](std::vector<int> spills) {
        if (static_cast<int>(spills.size()) <= dp_cap) return dp_order(graph, spills, dp_cap);
        return greedy_order(graph, spills);
    };

    Rng rng(seed);
    for (int it = 0; it < iterations; ++it) {
        const int s1 = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(p)));
        int s2 = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(p - 1)));
        if (s2 >= s1) ++s2;
        const int a1 = owner[s1];
        const int a2 = owner[s2];
        if (a1 != a2) {
            std::vector<int> r1 = result.best.routes[a1];
            std::vector<int> r2 = result.best.routes[a2];
            std::replace(r1.begin(), r1.end(), s1, s2);
            std::replace(r2.begin(), r2.end(), s2, s1);
            r1 = reorder(std::move(r1));
            r2 = reorder(std::move(r2));
            const double d1 = route_damage(graph, r1);
            const double d2 = route_damage(graph, r2);
            const double candidate = total - damage[a1] - damage[a2] + d1 + d2;
            if (candidate < total) {
                result.best.routes[a1] = std::move(r1);
                result.best.routes[a2] = std::move(r2);
                damage[a1] = d1;
                damage[a2] = d2;
                owner[s1] = a2;
                owner[s2] = a1;
                total = 0.0;
                for (const double d : damage) total += d;
                ++result.accepted;
            }
        }
        result.trace.push_back(total);
    }
    return result;
}

HeuristicResult run_heuristic(const MotionGraph& graph, int k, const HeuristicConfig& config)
{
    HeuristicResult r;
    r.best = greedy_assign(graph, k);
    r.objective = evaluate_damage(graph, r.best).damage;
    r.stages.push_back({"greedy", r.objective});
    if (config.use_dp) {
        r.best = dp_refine(graph, r.best, config.dp_cap);
        r.objective = evaluate_damage(graph, r.best).damage;
        r.stages.push_back({"dp", r.objective});
    }
    if (config.use_ils) {
        r.best = ils_refine(graph, r.best, config.ils_iterations, config.seed, config.dp_cap).best;
        r.objective = evaluate_damage(graph, r.best).damage;
        r.stages.push_back({"ils", r.objective});
    }
    return r;
}

OracleResult brute_force_oracle(const MotionGraph& graph, int k)
{
    const int p = graph.spill_count();
    if (p > 9) throw Error(ErrorCode::capacity, "brute_force_oracle handles at most 9 spills");
    if (k < 1) throw Error(ErrorCode::config, "fleet size must be at least 1");
    OracleResult best;
    best.damage = std::numeric_limits<double>::infinity();
    if (p == 0) {
        best.best.routes.assign(static_cast<std::size_t>(k), {});
        best.damage = 0.0;
        return best;
    }

    std::vector<int> perm(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) perm[i] = i + 1;
    const int cuts_needed = k - 1;
    std::vector<int> cuts(static_cast<std::size_t>(cuts_needed), 0);

    do {
        // cut positions are non-decreasing indices in [0, p]
        std::fill(cuts.begin(), cuts.end(), 0);
        while (true) {
            double total = 0.0;
            int begin = 0;
            for (int seg = 0; seg <= cuts_needed; ++seg) {
                const int end = seg < cuts_needed ? cuts[seg] : p;
                double t = 0.0;
                int prev = 0;
                for (int i = begin; i < end; ++i) {
                    t += graph.cost(prev, perm[i]);
                    total += graph.risk(perm[i]) * t;
                    prev = perm[i];
                }
                begin = end;
            }
            if (total < best.damage) {
                best.damage = total;
                best.best.routes.clear();
                int b = 0;
                for (int seg = 0; seg <= cuts_needed; ++seg) {
                    const int e = seg < cuts_needed ? cuts[seg] : p;
                    best.best.routes.emplace_back(perm.begin() + b, perm.begin() + e);
                    b = e;
                }
            }
            // next non-decreasing cut vector
            int idx = cuts_needed - 1;
            while (idx >= 0 && cuts[idx] == p) --idx;
            if (idx < 0) break;
            ++cuts[idx];
            for (int j = idx + 1; j < cuts_needed; ++j) cuts[j] = cuts[idx];
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

RouteSet canonical(const RouteSet& routes)
{
    RouteSet out;
    for (const auto& r : routes.routes) {
        if (!r.empty()) out.routes.push_back(r);
    }
    std::sort(out.routes.begin(), out.routes.end());
    return out;
}

std::string to_string(const RouteSet& routes)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t a = 0; a < routes.routes.size(); ++a) {
        if (a) os << ", ";
        os << '[';
        for (std::size_t i = 0; i < routes.routes[a].size(); ++i) {
            if (i) os << ' ';
            os << routes.routes[a][i];
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

}  // namespace boomfleet
