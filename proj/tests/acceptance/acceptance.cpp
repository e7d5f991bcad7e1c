// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance                 run every criterion
//   acceptance --criterion N   run one

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "boomfleet/benchmark.hpp"
#include "boomfleet/bnb.hpp"
#include "boomfleet/control.hpp"
#include "boomfleet/dynamics.hpp"
#include "boomfleet/grid.hpp"
#include "boomfleet/milp.hpp"
#include "boomfleet/motion_graph.hpp"
#include "boomfleet/rng.hpp"
#include "boomfleet/routing.hpp"
#include "boomfleet/scenario.hpp"
#include "boomfleet/tracking.hpp"
#include "support/control_oracles.hpp"
#include "support/lp_reader.hpp"
#include "support/oracles.hpp"

using namespace boomfleet;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

MotionGraph scenario_graph(std::uint64_t seed, int p, int k)
{
    return build_motion_graph(generate_random_scenario(seed, p, k));
}

// ----------------------------------------------------------------- shared runs

struct DeskRun {
    TrackingResult result;
    double wall = 0.0;
};

// PID then FBL on the reference Dubins case
const std::array<DeskRun, 2>& desk_runs()
{
    static std::optional<std::array<DeskRun, 2>> cache;
    if (!cache) {
        std::array<DeskRun, 2> r;
        for (int c = 0; c < 2; ++c) {
            SimulationOptions sim;
            sim.controller.type = c == 0 ? ControllerType::pid : ControllerType::fbl;
            TrackingExperiment exp;
            exp.rho = 15.0;
            exp.v_ref = 5.0;
            const auto t0 = Clock::now();
            r[c].result = run_tracking_experiment(exp, sim);
            r[c].wall = seconds_since(t0);
            r[c].result.log.clear();
        }
        cache = r;
    }
    return *cache;
}

const std::vector<RmseMap>& sweep_maps()
{
    static std::optional<std::vector<RmseMap>> cache;
    if (!cache) {
        std::vector<RmseMap> maps;
        for (ControllerType type : {ControllerType::pid, ControllerType::fbl}) {
            SimulationOptions sim;
            sim.controller.type = type;
            SweepSpec spec;
            spec.rho = linspace(10.0, 20.0, 6);
            spec.v_ref = linspace(5.0, 15.0, 6);
            RmseMap m = run_rmse_sweep(spec, sim);
            m.controller = type;
            maps.push_back(std::move(m));
        }
        cache = std::move(maps);
    }
    return *cache;
}

// ----------------------------------------------------------------- criteria

Outcome routing_exactness()
{
    int agree = 0, optimal = 0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int p = 1 + i % 8;
        const int k = 1 + (i / 8) % 3;
        const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);
        const MotionGraph g = i % 2 == 0 ? scenario_graph(seed, p, k) : oracle::random_graph(seed, p);
        const SolveReport r = solve_exact_bnb(g, k, std::nullopt, BnbConfig{60.0, -1});
        const double diff = std::abs(r.objective - brute_force_oracle(g, k).damage);
        worst = std::max(worst, diff);
        agree += diff <= 1e-9;
        optimal += r.optimal;
    }
    return {agree == 100 && optimal == 100,
            fmt("%d/100 objectives equal brute force (max diff %.2e), %d/100 proven optimal", agree, worst, optimal)};
}

Outcome dp_exactness()
{
    Rng rng(2024);
    int agree = 0;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const MotionGraph g = i % 2 == 0 ? oracle::random_graph(5000 + i, 10) : scenario_graph(5000 + i, 10, 1);
        std::vector<int> all{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        for (int j = 9; j > 0; --j) std::swap(all[j], all[rng.below(j + 1)]);
        const int size = 1 + static_cast<int>(rng.below(8));
        const std::vector<int> subset(all.begin(), all.begin() + size);
        const double got = route_damage(g, dp_order(g, subset));
        const double ref = oracle::best_permutation(g, subset);
        const double diff = std::abs(got - ref);
        worst = std::max(worst, diff);
        agree += diff <= 1e-9;
    }
    return {agree == 200, fmt("%d/200 subsets equal the factorial optimum (max diff %.2e)", agree, worst)};
}

Outcome stage_dominance()
{
    const auto t0 = Clock::now();
    BenchmarkSpec spec;
    spec.spill_counts = {25, 50};
    spec.fleet_sizes = {1, 2, 3, 5, 10};
    spec.seeds = {1, 2, 3};
    spec.bnb = {60.0, 200000};
    const auto rows = run_routing_benchmark(spec);
    int chain = 0, nodes = 0, limited = 0;
    double best_gain = 0.0, mean_gain = 0.0;
    for (const auto& r : rows) {
        const double eps = 1e-9 * std::max(1.0, r.greedy);
        const bool ok = r.greedy >= r.heuristic - eps && r.heuristic >= r.warm.objective - eps &&
                        r.warm.objective >= r.lower_bound - eps;
        chain += ok;
        nodes += r.warm.nodes_explored <= r.cold.nodes_explored;
        limited += r.warm.hit_limit;
        best_gain = std::max(best_gain, r.heuristic_improvement);
        mean_gain += r.heuristic_improvement / static_cast<double>(rows.size());
        if (!ok) {
            std::printf("    chain broken: p=%d k=%d seed=%llu greedy %.6g heuristic %.6g warm %.6g lb %.6g\n", r.spills,
                        r.agents, static_cast<unsigned long long>(r.seed), r.greedy, r.heuristic, r.warm.objective,
                        r.lower_bound);
        }
    }
    const double wall = seconds_since(t0);
    const int n = static_cast<int>(rows.size());
    return {n == 30 && chain == n && nodes == n && wall <= 600.0,
            fmt("%d instances: chain holds on %d, warm nodes <= cold on %d, %d warm searches stopped by the node "
                "limit; heuristic improvement over greedy mean %.1f%% max %.1f%%; %.0f s",
                n, chain, nodes, limited, 100 * mean_gain, 100 * best_gain, wall)};
}

Outcome fleet_monotonicity()
{
    int instances = 0, ok = 0;
    for (int p = 1; p <= 8; ++p) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const MotionGraph g = scenario_graph(7000 + 10 * p + seed, p, 3);
            double obj[4];
            for (int k = 1; k <= 3; ++k) obj[k] = solve_exact_bnb(g, k, std::nullopt, BnbConfig{60.0, -1}).objective;
            bool good = true;
            for (int k = 1; k < 3; ++k) {
                const double tol = 1e-9 * std::max(1.0, obj[k]);
                // with p > k some route carries two spills and moving its last one to the new agent helps
                if (p > k) good = good && obj[k + 1] < obj[k] - tol;
                else good = good && std::abs(obj[k + 1] - obj[k]) <= tol;
            }
            if (!good) std::printf("    p=%d seed=%llu: %.6g %.6g %.6g\n", p, static_cast<unsigned long long>(seed), obj[1], obj[2], obj[3]);
            ++instances;
            ok += good;
        }
    }
    return {ok == instances,
            fmt("%d/%d instances: objective strictly decreases while p > k and is flat once every spill has its own duo",
                ok, instances)};
}

std::set<std::string> encode(const RouteSet& rs)
{
    std::set<std::string> on;
    for (const auto& route : rs.routes) {
        for (std::size_t t = 0; t < route.size(); ++t) {
            int prev = 0;
            for (std::size_t s = 0; s <= t; ++s) {
                on.insert(f_name(prev, route[s], route[t]));
                prev = route[s];
            }
        }
    }
    return on;
}

Outcome milp_soundness()
{
    const auto t0 = Clock::now();
    int cases = 0, ok = 0;
    for (int p = 1; p <= 3; ++p) {
        for (int k = 1; k <= 3; ++k) {
            const MotionGraph g = oracle::random_graph(900 + 10 * p + k, p);
            const lp::Model model = lp::parse(to_lp_text(build_milp(g, k)));
            std::set<std::set<std::string>> feasible;
            double best = std::numeric_limits<double>::infinity();
            lp::enumerate_feasible(model, [&](const std::map<std::string, int>& x) {
                std::set<std::string> on;
                double obj = 0.0;
                for (const auto& [name, v] : x) {
                    if (v) on.insert(name);
                    if (v && model.objective.count(name)) obj += model.objective.at(name);
                }
                feasible.insert(on);
                best = std::min(best, obj);
            });
            std::set<std::set<std::string>> expected;
            for (const RouteSet& rs : oracle::all_route_sets(p, k)) expected.insert(encode(rs));
            const double brute = brute_force_oracle(g, k).damage;
            const bool good = feasible == expected && std::abs(best - brute) <= 1e-9 * std::max(1.0, brute);
            if (!good) {
                std::printf("    p=%d k=%d: %zu feasible vs %zu route sets, optimum %.9g vs %.9g\n", p, k, feasible.size(),
                            expected.size(), best, brute);
            }
            ++cases;
            ok += good;
        }
    }
    const double wall = seconds_since(t0);
    return {ok == cases, fmt("%d/%d (p, k) cases: feasible binaries are exactly the route-set encodings and the model "
                             "optimum equals brute force; %.1f s",
                             ok, cases, wall)};
}

Outcome linear_loop_fidelity()
{
    const FblGains def;
    const double dt = 0.01;  // control rate
    double worst_u = 0.0, worst_w = 0.0;
    std::vector<std::pair<double, double>> surge{{def.beta_u, def.Omega_u}}, yaw{{def.beta_w, def.Omega_w}};
    for (double b : {2.0, 4.0, 8.0, 14.0})
        for (double o : {0.5, 1.0, 2.0}) surge.push_back({b, o}), yaw.push_back({b, o});
    for (auto topo : {LeadTopology::normalized, LeadTopology::standard}) {
        for (auto [beta, Omega] : surge) {
            const auto y = oracle::simulate_lead_loop(beta, Omega, 1, topo, 10.0 / Omega, dt);
            const auto a = oracle::lead_loop_transfer(beta, Omega, 1, topo);
            for (std::size_t i = 0; i < y.size(); ++i) worst_u = std::max(worst_u, std::abs(y[i] - a(i * dt)));
        }
        for (auto [beta, Omega] : yaw) {
            const auto y = oracle::simulate_lead_loop(beta, Omega, 2, topo, 10.0 / Omega, dt);
            const auto a = oracle::lead_loop_transfer(beta, Omega, 2, topo);
            for (std::size_t i = 0; i < y.size(); ++i) worst_w = std::max(worst_w, std::abs(y[i] - a(i * dt)));
        }
    }
    Rng rng(606);
    int disagree = 0, unstable = 0;
    for (int i = 0; i < 100; ++i) {
        FblGains g;
        g.Omega_u = rng.uniform(0.05, 3.0);
        g.beta_u = rng.uniform(0.05, 5.0);
        g.Omega_w = rng.uniform(0.05, 3.0);
        g.beta_w = rng.uniform(0.1, 4.0);
        const StabilityReport rep = stability_check(g);
        disagree += rep.surge.stable != oracle::hurwitz_by_roots(surge_characteristic(g));
        disagree += rep.yaw.stable != oracle::hurwitz_by_roots(yaw_characteristic(g));
        unstable += !rep.yaw.stable;
    }
    return {worst_u <= 0.01 && worst_w <= 0.02 && disagree == 0,
            fmt("surge L-inf error %.2e (<= 1e-2), yaw %.2e (<= 2e-2) over 10/Omega at dt = 0.01 s, both topologies; "
                "Routh vs roots: %d disagreements on 100 draws (%d unstable yaw loops)",
                worst_u, worst_w, disagree, unstable)};
}

Outcome theorem_decay()
{
    const auto t0 = Clock::now();
    const VesselParams p;
    FblVesselController ctl(FblGains{}, p);
    VesselState s;
    const double h = 1e-3;
    const int per_ctrl = 10;
    PidOutput u{};
    std::vector<std::pair<double, double>> sway;  // (t, |v|) once per second after the first 10 s
    double eu = 0, eth = 0, ev = 0, worst_after = 0;
    const auto f = [&](const VesselState& x) { return vessel_derivative(x, u.F, u.eta, {0.0, 0.0}, p); };
    const auto add = [](VesselState a, const VesselState& d, double k) {
        a.x += k * d.x, a.y += k * d.y, a.theta += k * d.theta, a.u += k * d.u, a.v += k * d.v, a.omega += k * d.omega;
        return a;
    };
    for (int i = 0; i <= 90000; ++i) {
        const double t = i * h;
        if (i % per_ctrl == 0) u = ctl.step(2.0, 0.5, s, {0.0, 0.0}, h * per_ctrl);
        if (i % 1000 == 0 && t >= 10.0 && t <= 60.0) sway.push_back({t, std::abs(s.v)});
        if (i == 60000) eu = std::abs(s.u - 2.0), eth = std::abs(s.theta - 0.5), ev = std::abs(s.v);
        if (i >= 60000)
            worst_after = std::max({worst_after, std::abs(s.u - 2.0), std::abs(s.theta - 0.5), std::abs(s.v)});
        const auto k1 = f(s), k2 = f(add(s, k1, h / 2)), k3 = f(add(s, k2, h / 2)), k4 = f(add(s, k3, h));
        s = add(add(add(add(s, k1, h / 6), k2, h / 3), k3, h / 3), k4, h / 6);
    }
    // least-squares slope of log |v|
    double st = 0, sl = 0, stt = 0, stl = 0;
    int n = 0;
    for (auto [t, v] : sway) {
        if (v <= 0) continue;
        const double l = std::log(v);
        st += t, sl += l, stt += t * t, stl += t * l, ++n;
    }
    const double slope = n > 1 ? (n * stl - st * sl) / (n * stt - st * st) : 0.0;
    const double wall = seconds_since(t0);
    const bool pass = eu < 1e-3 && eth < 1e-3 && ev < 1e-3 && worst_after < 1e-3 && slope < 0.0 && wall < 10.0;
    return {pass, fmt("at t = 60 s |u-u_ref| %.2e, |theta-theta_ref| %.2e, |v| %.2e (each < 1e-3); worst over 60-90 s "
                      "%.2e; log|v| slope %.4f 1/s over 10-60 s; %.1f s",
                      eu, eth, ev, worst_after, slope, wall)};
}

Outcome physics_sanity()
{
    DuoParams p;
    VesselState a{0.0, 15.0, 0.0, 3.0, 0.5, 0.2};
    VesselState b{0.0, -15.0, 0.0, 2.0, -0.3, -0.1};
    DuoState s = make_duo(a, b, p);
    double mech = kinetic_energy(s, p) + spring_energy(s, p);
    double ke = kinetic_energy(s, p);
    int mech_up = 0, ke_up = 0, third = 0, steps = 0;
    double ke_rise = 0.0;
    const int n = static_cast<int>(std::lround(10.0 / p.dt));
    for (int i = 0; i < n; ++i) {
        s = step(s, Controls{}, p.dt, p);
        ++steps;
        const double m2 = kinetic_energy(s, p) + spring_energy(s, p);
        const double k2 = kinetic_energy(s, p);
        mech_up += m2 > mech * (1.0 + 1e-9);
        if (k2 > ke) {
            ++ke_up;
            ke_rise = std::max(ke_rise, (k2 - ke) / ke);
        }
        mech = m2, ke = k2;
        const Anchor s1{stern_point(s.vessel1, p.vessel), stern_velocity(s.vessel1, p.vessel)};
        const Anchor s2{stern_point(s.vessel2, p.vessel), stern_velocity(s.vessel2, p.vessel)};
        const JointForces f = boom_joint_forces(s.boom, s1, s2, p.boom);
        const int links = static_cast<int>(s.boom.links.size());
        bool paired = f.on_vessel1() + f.on_left(0) == Vec2{0.0, 0.0};
        for (int j = 0; j + 1 < links; ++j) paired = paired && f.on_right(j) + f.on_left(j + 1) == Vec2{0.0, 0.0};
        paired = paired && f.on_right(links - 1) + f.on_vessel2() == Vec2{0.0, 0.0};
        third += !paired;
    }
    double max_sep = 0.0;
    int runs = 0;
    for (const auto& r : desk_runs()) max_sep = std::max(max_sep, r.result.max_separation), ++runs;
    for (const auto& m : sweep_maps())
        for (const auto& c : m.cells) max_sep = std::max(max_sep, c.result.max_separation), ++runs;
    const double L = p.boom.total_length;
    return {mech_up == 0 && third == 0 && max_sep <= 1.05 * L,
            fmt("10 s coupled zero-thrust run: mechanical energy (kinetic + spring) rose on %d/%d steps, kinetic energy "
                "alone on %d (max +%.2f%%, spring energy exchange); third-law pairing broken on %d steps; max stern "
                "separation over %d tracking runs %.2f m (<= %.1f m)",
                mech_up, steps, ke_up, 100 * ke_rise, third, runs, max_sep, 1.05 * L)};
}

Outcome desk_tracking()
{
    const auto& runs = desk_runs();
    bool pass = true;
    std::string detail;
    for (int c = 0; c < 2; ++c) {
        const auto& r = runs[c].result;
        const bool ok = runs[c].wall < 120.0 && r.complete && r.vessel[0].cross_track_rmse <= 8 && r.vessel[1].cross_track_rmse <= 8 &&
                        r.vessel[0].heading_rmse <= 15 && r.vessel[1].heading_rmse <= 15;
        pass = pass && ok;
        detail += fmt("%s %s at t = %.1f s, cross-track %.2f/%.2f m, heading %.2f/%.2f deg, %.1f s wall; ",
                      c == 0 ? "PID" : "FBL", r.complete ? "complete" : "INCOMPLETE", r.finish_time,
                      r.vessel[0].cross_track_rmse, r.vessel[1].cross_track_rmse, r.vessel[0].heading_rmse,
                      r.vessel[1].heading_rmse, runs[c].wall);
    }
    detail.resize(detail.size() - 2);
    return {pass, detail};
}

Outcome rmse_trends()
{
    const auto t0 = Clock::now();
    const auto& maps = sweep_maps();
    const double wall = seconds_since(t0);
    bool pass = wall <= 1800.0;
    std::string detail;
    for (const auto& m : maps) {
        const std::size_t iv5 = 0, iv15 = m.v_ref.size() - 1;
        int complete = 0;
        for (const auto& c : m.cells) complete += c.result.complete;
        detail += to_string(m.controller) + ":";
        for (int v = 0; v < 2; ++v) {
            const double h15 = m.at(0, iv15).result.vessel[v].heading_rmse;
            const double h5 = m.at(0, iv5).result.vessel[v].heading_rmse;
            int pairs = 0, good = 0;
            for (std::size_t i = 0; i + 1 < m.rho.size(); ++i) {
                ++pairs;
                good += m.at(i + 1, iv15).result.vessel[v].cross_track_rmse <=
                        m.at(i, iv15).result.vessel[v].cross_track_rmse;
            }
            const bool heading_ok = h15 >= h5;
            const bool ct_ok = good >= 0.8 * pairs;
            pass = pass && heading_ok && ct_ok;
            detail += fmt(" vessel %d heading(10,15) %.3f %s heading(10,5) %.3f, cross-track non-increasing in rho on "
                          "%d/%d pairs;",
                          v + 1, h15, heading_ok ? ">=" : "<", h5, good, pairs);
        }
        detail += fmt(" %d/36 cells complete. ", complete);
    }
    detail += fmt("sweep %.0f s", wall);
    return {pass, detail};
}

// ----------------------------------------------------------- determinism

std::map<std::string, std::string> read_csvs(const fs::path& dir)
{
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (e.path().extension() != ".csv") continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        out[fs::relative(e.path(), dir).string()] = ss.str();
    }
    return out;
}

Outcome determinism()
{
    const fs::path root = fs::temp_directory_path() / "boomfleet_acceptance";
    fs::remove_all(root);
    const std::string cli = BOOMFLEET_CLI;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"gen", "scenario gen --seed 7 --spills 6 --agents 2"},
        {"gen_small", "scenario gen --seed 3 --spills 2 --agents 1 --coverage 0"},
        {"solve", "route solve --scenario {root}/a/gen/scenario.json --export-lp"},
        {"bench", "route bench --spills 8,10 --agents 1,2 --seeds 1,2 --node-limit 20000"},
        {"track", "track run --controller pid"},
        {"sweep", "track sweep --rho 10,20,2 --v-ref 5,15,2 --plot"},
        {"mission", "mission run --scenario {root}/a/gen_small/scenario.json --controller fbl"},
    };
    int files = 0, differing = 0, failed = 0;
    for (const char* pass : {"a", "b"}) {
        for (const auto& [name, args] : commands) {
            std::string a = args;
            const auto pos = a.find("{root}");
            if (pos != std::string::npos) a.replace(pos, 6, root.string());
            const fs::path out = root / pass / name;
            fs::create_directories(out);
            const std::string cmd = "\"" + cli + "\" --out \"" + out.string() + "\" " + a + " > \"" +
                                    (out / "stdout.txt").string() + "\" 2>&1";
            const int rc = std::system(cmd.c_str());
            const int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
            if (code != 0 && code != 2) {
                ++failed;
                std::printf("    %s: exit %d\n", cmd.c_str(), code);
            }
        }
    }
    std::string listing;
    for (const auto& [name, args] : commands) {
        const auto a = read_csvs(root / "a" / name);
        const auto b = read_csvs(root / "b" / name);
        if (a.size() != b.size()) ++differing;
        for (const auto& [file, text] : a) {
            ++files;
            const auto it = b.find(file);
            if (it == b.end() || it->second != text) {
                ++differing;
                std::printf("    %s/%s differs\n", name.c_str(), file.c_str());
            }
        }
        listing += (listing.empty() ? "" : " ") + name + "(" + std::to_string(a.size()) + ")";
    }
    return {failed == 0 && differing == 0 && files > 0,
            fmt("%zu commands run twice, %d CSV files compared byte for byte, %d differ, %d command failures: %s",
                commands.size(), files, differing, failed, listing.c_str())};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"boomfleet acceptance suite"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-11)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all{
        {1, "routing exactness", routing_exactness},
        {2, "DP exactness", dp_exactness},
        {3, "stage dominance chain", stage_dominance},
        {4, "monotonicity in fleet size", fleet_monotonicity},
        {5, "MILP export soundness", milp_soundness},
        {6, "linear-loop fidelity", linear_loop_fidelity},
        {7, "constant-reference decay", theorem_decay},
        {8, "physics sanity", physics_sanity},
        {9, "tracking at desk scale", desk_tracking},
        {10, "RMSE trend reproduction", rmse_trends},
        {11, "CLI determinism", determinism},
    };
    int failures = 0;
    for (const auto& c : all) {
        if (only != 0 && c.id != only) continue;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s  %2d  %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
