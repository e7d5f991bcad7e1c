#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "boomfleet/bnb.hpp"
#include "boomfleet/error.hpp"
#include "boomfleet/milp.hpp"
#include "boomfleet/rng.hpp"
#include "boomfleet/routing.hpp"
#include "support/lp_reader.hpp"
#include "support/oracles.hpp"

using namespace boomfleet;

namespace {

MotionGraph graph_from(int p, const std::vector<std::tuple<int, int, double>>& costs, const std::vector<double>& risk)
{
    MotionGraph g(p);
    for (int i = 0; i <= p; ++i) {
        for (int j = 1; j <= p; ++j) {
            if (i != j) g.set_cost(i, j, 1000.0);
        }
    }
    for (const auto& [i, j, c] : costs) g.set_cost(i, j, c);
    for (int v = 1; v <= p; ++v) g.set_risk(v, risk[v - 1]);
    return g;
}

BnbConfig unlimited() { return BnbConfig{600.0, -1}; }

}  // namespace

TEST_CASE("damage of hand examples")
{
    const auto g1 = graph_from(1, {{0, 1, 40.0}}, {2.0});
    CHECK(evaluate_damage(g1, {{{1}}}).damage == 80.0);

    const auto g2 = graph_from(2, {{0, 1, 10.0}, {1, 2, 5.0}}, {1.0, 1.0});
    const auto r = evaluate_damage(g2, {{{1, 2}}});
    CHECK(r.completion[1] == 10.0);
    CHECK(r.completion[2] == 15.0);
    CHECK(r.damage == 25.0);
}

TEST_CASE("damage matches prefix recomputation and ignores agent order")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = oracle::random_graph(seed, 6);
        Rng rng(seed + 100);
        RouteSet rs;
        rs.routes.resize(2);
        std::vector<int> ids{1, 2, 3, 4, 5, 6};
        for (int i = 5; i > 0; --i) std::swap(ids[i], ids[rng.below(static_cast<std::uint64_t>(i + 1))]);
        for (int s : ids) rs.routes[rng.below(2)].push_back(s);
        const double d = evaluate_damage(g, rs).damage;
        CHECK(d == doctest::Approx(oracle::prefix_damage(g, rs.routes)).epsilon(1e-12));
        RouteSet flipped{{rs.routes[1], rs.routes[0]}};
        CHECK(evaluate_damage(g, flipped).damage == d);
    }
}

TEST_CASE("invalid route sets are rejected")
{
    const auto g = oracle::random_graph(1, 3);
    CHECK_THROWS_AS(evaluate_damage(g, {{{1, 2}}}), Error);
    CHECK_THROWS_AS(evaluate_damage(g, {{{1, 2, 3, 1}}}), Error);
    CHECK_THROWS_AS(evaluate_damage(g, {{{1, 2, 0, 3}}}), Error);
    try {
        evaluate_damage(g, {{{1, 2}, {2, 3}}});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_routeset);
    }
}

TEST_CASE("greedy picks the best ratio")
{
    const auto g = graph_from(2, {{0, 1, 5.0}, {0, 2, 1.0}, {2, 1, 5.0}, {1, 2, 1.0}}, {10.0, 3.0});
    CHECK(greedy_assign(g, 1).routes[0] == std::vector<int>{2, 1});
}

TEST_CASE("greedy tie goes to the lower spill id")
{
    const auto g = graph_from(3, {{0, 1, 2.0}, {0, 2, 1.0}, {0, 3, 2.0}, {2, 1, 1.0}, {2, 3, 1.0}, {1, 3, 1.0}, {3, 1, 1.0}},
                              {2.0, 1.0, 2.0});
    // all three depot ratios equal 1: spill 1 first
    CHECK(greedy_assign(g, 1).routes[0].front() == 1);
}

TEST_CASE("greedy with one agent per spill follows the queue trace")
{
    // depot ratios: 1 -> 4/2 = 2, 2 -> 3/1 = 3, 3 -> 1/1 = 1
    const auto g = graph_from(3,
                              {{0, 1, 2.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 9.0}, {2, 1, 8.0}, {2, 3, 0.5},
                               {3, 1, 1.0}, {3, 2, 1.0}},
                              {4.0, 3.0, 1.0});
    // agent 0 (t=0) takes 2 (t=1); agent 1 (t=0) takes 1 (t=2); agent 2 (t=0) takes 3.
    const auto rs = greedy_assign(g, 3);
    CHECK(rs.routes[0] == std::vector<int>{2});
    CHECK(rs.routes[1] == std::vector<int>{1});
    CHECK(rs.routes[2] == std::vector<int>{3});
    // with two agents, agent 0 (t=1) is next after agent 1 and extends from spill 2: ratio to 3 = 1/0.5
    const auto two = greedy_assign(g, 2);
    CHECK(two.routes[0] == std::vector<int>{2, 3});
    CHECK(two.routes[1] == std::vector<int>{1});
}

TEST_CASE("dp order on small cases")
{
    const auto g = graph_from(2, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}, {2, 1, 1.0}}, {10.0, 1.0});
    CHECK(dp_order(g, {2, 1}) == std::vector<int>{1, 2});
    CHECK(route_damage(g, dp_order(g, {1, 2})) == 12.0);
    CHECK(dp_order(g, {2}) == std::vector<int>{2});
    CHECK(dp_order(g, {}).empty());
}

TEST_CASE("dp order equals permutation brute force")
{
    Rng rng(5);
    for (int trial = 0; trial < 150; ++trial) {
        const int p = 1 + static_cast<int>(rng.below(10));
        const auto g = oracle::random_graph(1000 + trial, p);
        std::vector<int> subset;
        for (int s = 1; s <= p; ++s) {
            if (rng.uniform() < 0.8 && subset.size() < 8) subset.push_back(s);
        }
        if (subset.empty()) subset.push_back(1);
        const auto order = dp_order(g, subset);
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == subset);
        CHECK(route_damage(g, order) == doctest::Approx(oracle::best_permutation(g, subset)).epsilon(1e-12));
    }
}

TEST_CASE("parallel dp matches the serial reference")
{
    for (int m : {10, 12, 14}) {
        const auto g = oracle::random_graph(77 + m, m);
        std::vector<int> all(m);
        for (int i = 0; i < m; ++i) all[i] = i + 1;
        CHECK(dp_order(g, all) == dp_order_serial(g, all));
    }
}

TEST_CASE("dp capacity error")
{
    const auto g = oracle::random_graph(3, 6);
    try {
        dp_order(g, {1, 2, 3, 4, 5}, 4);
        FAIL("expected capacity error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::capacity);
        CHECK(std::string(e.what()).find('4') != std::string::npos);
    }
}

TEST_CASE("ils edge cases")
{
    const auto g = oracle::random_graph(8, 6);
    const auto init = greedy_assign(g, 2);
    CHECK(ils_refine(g, init, 0, 1).best == init);
    const auto single = greedy_assign(g, 1);
    const auto r = ils_refine(g, single, 50, 1);
    CHECK(r.best == single);
    CHECK(r.accepted == 0);
}

TEST_CASE("ils trace is monotone and ends at the returned objective")
{
    const auto g = oracle::random_graph(21, 10);
    const auto init = greedy_assign(g, 2);
    const double d0 = evaluate_damage(g, init).damage;
    const auto r = ils_refine(g, init, 500, 3);
    REQUIRE(r.trace.size() == 500);
    double prev = d0;
    for (double v : r.trace) {
        CHECK(v <= prev);
        prev = v;
    }
    CHECK(r.trace.back() == doctest::Approx(evaluate_damage(g, r.best).damage).epsilon(1e-12));
    CHECK(evaluate_damage(g, r.best).damage <= d0);
    CHECK(ils_refine(g, init, 500, 3).best == r.best);
}

TEST_CASE("heuristic stages never get worse")
{
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto g = oracle::random_graph(seed * 13, 12);
        const auto h = run_heuristic(g, 3, {true, true, 200, seed, default_dp_cap});
        REQUIRE(h.stages.size() == 3);
        CHECK(h.stages[0].objective >= h.stages[1].objective);
        CHECK(h.stages[1].objective >= h.stages[2].objective);
        CHECK(h.objective == evaluate_damage(g, h.best).damage);
    }
}

TEST_CASE("brute force oracle small cases")
{
    const auto g1 = graph_from(1, {{0, 1, 3.0}}, {2.0});
    CHECK(brute_force_oracle(g1, 1).damage == 6.0);
    const auto g2 = graph_from(2, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 100.0}, {2, 1, 100.0}}, {1.0, 1.0});
    const auto o = brute_force_oracle(g2, 2);
    CHECK(o.damage == 2.0);
    CHECK(canonical(o.best) == RouteSet{{{1}, {2}}});
    CHECK_THROWS_AS(brute_force_oracle(oracle::random_graph(1, 10), 2), Error);
}

TEST_CASE("brute force agrees with a route-set enumeration")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int p = 1 + static_cast<int>(seed % 5);
        const int k = 1 + static_cast<int>(seed % 3);
        const auto g = oracle::random_graph(seed + 500, p);
        double best = 1e300;
        for (const auto& rs : oracle::all_route_sets(p, k)) best = std::min(best, oracle::prefix_damage(g, rs.routes));
        CHECK(brute_force_oracle(g, k).damage == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("bnb single spill")
{
    const auto g = graph_from(1, {{0, 1, 4.0}}, {3.0});
    const auto r = solve_exact_bnb(g, 1, std::nullopt, unlimited());
    CHECK(r.best.routes[0] == std::vector<int>{1});
    CHECK(r.objective == 12.0);
    CHECK(r.gap == 0.0);
    CHECK(r.optimal);
}

TEST_CASE("bnb equals brute force on small instances")
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const int p = 1 + static_cast<int>(seed % 8);
        const int k = 1 + static_cast<int>(seed % 3);
        const auto g = oracle::random_graph(seed * 7 + 1, p);
        const auto o = brute_force_oracle(g, k);
        const auto r = solve_exact_bnb(g, k, std::nullopt, unlimited());
        CHECK(r.objective == doctest::Approx(o.damage).epsilon(1e-12));
        CHECK(std::abs(r.objective - o.damage) <= 1e-9);
        CHECK(r.lower_bound == r.objective);
        CHECK(r.objective == evaluate_damage(g, r.best).damage);
    }
}

TEST_CASE("bnb handles zero-cost edges and more agents than spills")
{
    MotionGraph g(3);
    for (int i = 0; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            if (i != j) g.set_cost(i, j, (i + j) % 2 ? 0.0 : 2.0);
        }
    }
    for (int v = 1; v <= 3; ++v) g.set_risk(v, v);
    for (int k = 1; k <= 5; ++k) {
        const auto r = solve_exact_bnb(g, k, std::nullopt, unlimited());
        CHECK(r.objective == doctest::Approx(brute_force_oracle(g, k).damage));
        CHECK(r.best.routes.size() == static_cast<std::size_t>(k));
    }
}

TEST_CASE("bnb warm start never explores more nodes")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = oracle::random_graph(seed + 40, 9);
        const auto h = run_heuristic(g, 2, {true, true, 100, seed, default_dp_cap});
        const auto cold = solve_exact_bnb(g, 2, std::nullopt, unlimited());
        const auto warm = solve_exact_bnb(g, 2, h.best, unlimited());
        CHECK(warm.nodes_explored <= cold.nodes_explored);
        CHECK(warm.objective == doctest::Approx(cold.objective).epsilon(1e-12));
    }
}

TEST_CASE("bnb anytime report under a node limit")
{
    const auto g = oracle::random_graph(99, 25);
    const auto h = run_heuristic(g, 3, {true, true, 100, 1, default_dp_cap});
    const auto r = solve_exact_bnb(g, 3, h.best, BnbConfig{60.0, 5000});
    CHECK(r.hit_limit);
    CHECK_FALSE(r.optimal);
    CHECK(r.nodes_explored == 5000);
    CHECK(r.objective <= h.objective);
    CHECK(r.lower_bound <= r.objective);
    CHECK(r.lower_bound > 0.0);
    CHECK(r.gap >= 0.0);
    CHECK(r.gap <= 1.0);
    const auto again = solve_exact_bnb(g, 3, h.best, BnbConfig{60.0, 5000});
    CHECK(again.objective == r.objective);
    CHECK(again.lower_bound == r.lower_bound);
}

TEST_CASE("bnb rejects a non-positive time limit")
{
    const auto g = oracle::random_graph(1, 3);
    try {
        solve_exact_bnb(g, 1, std::nullopt, BnbConfig{0.0, -1});
        FAIL("expected config error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::config);
    }
}

TEST_CASE("exact objective scales with risk and does not grow with fleet size")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = oracle::random_graph(seed + 300, 7);
        double prev = 1e300;
        for (int k = 1; k <= 3; ++k) {
            const double v = solve_exact_bnb(g, k, std::nullopt, unlimited()).objective;
            CHECK(v <= prev);
            prev = v;
        }
        auto scaled = g;
        for (int v = 1; v <= 7; ++v) scaled.set_risk(v, 3.5 * g.risk(v));
        const auto a = solve_exact_bnb(g, 2, std::nullopt, unlimited());
        const auto b = solve_exact_bnb(scaled, 2, std::nullopt, unlimited());
        CHECK(b.objective == doctest::Approx(3.5 * a.objective).epsilon(1e-12));
        CHECK(canonical(a.best) == canonical(b.best));
    }
}

TEST_CASE("milp variable counts and names")
{
    for (int p = 1; p <= 6; ++p) {
        const auto m = build_milp(oracle::random_graph(p, p), 2);
        long long bin = 0;
        long long cont = 0;
        for (const auto& v : m.variables) (v.binary ? bin : cont) += 1;
        CHECK(bin == milp_binary_count(p));
        CHECK(cont == milp_continuous_count(p));
    }
    const auto m1 = build_milp(graph_from(1, {{0, 1, 3.0}}, {2.0}), 1);
    REQUIRE(m1.variables.size() == 2);
    CHECK(m1.variables[0].name == "f_0_1_1");
    REQUIRE(m1.objective.size() == 1);
    CHECK(m1.objective[0].coef == 6.0);
}

TEST_CASE("milp export p=2 k=1 feasible points are the two orders")
{
    const auto g = graph_from(2, {{0, 1, 1.0}, {0, 2, 2.0}, {1, 2, 3.0}, {2, 1, 4.0}}, {5.0, 1.0});
    const auto model = lp::parse(to_lp_text(build_milp(g, 1)));
    std::vector<std::map<std::string, int>> feasible;
    lp::enumerate_feasible(model, [&](const auto& x) { feasible.push_back(x); });
    REQUIRE(feasible.size() == 2);
    // order [1, 2]: f_0_1_1, f_0_1_2, f_1_2_2; order [2, 1]: f_0_2_2, f_0_2_1, f_2_1_1
    std::set<std::set<std::string>> ones;
    for (const auto& x : feasible) {
        std::set<std::string> on;
        for (const auto& [n, v] : x) {
            if (v) on.insert(n);
        }
        ones.insert(on);
    }
    CHECK(ones.count({"f_0_1_1", "f_0_1_2", "f_1_2_2"}) == 1);
    CHECK(ones.count({"f_0_2_2", "f_0_2_1", "f_2_1_1"}) == 1);
    double best = 1e300;
    for (const auto& x : feasible) {
        double obj = 0.0;
        for (const auto& [n, c] : model.objective) obj += c * x.at(n);
        best = std::min(best, obj);
    }
    CHECK(best == brute_force_oracle(g, 1).damage);
}

TEST_CASE("milp text has the expected sections and writes to disk")
{
    const auto g = oracle::random_graph(4, 3);
    const std::string text = to_lp_text(build_milp(g, 2));
    for (const char* section : {"Minimize", "Subject To", "Bounds", "Binaries", "End"}) {
        CHECK(text.find(section) != std::string::npos);
    }
    CHECK(text.find(" fleet:") != std::string::npos);
    CHECK(text.find("<= 2\n") != std::string::npos);
    const auto path = std::filesystem::temp_directory_path() / "boomfleet_model.lp";
    export_milp(g, 2, path);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == text);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(export_milp(g, 2, "/nonexistent-dir/x.lp"), Error);
}
