#include "boomfleet/benchmark.hpp"

#include <algorithm>
#include <sstream>

#include "boomfleet/error.hpp"
#include "boomfleet/format.hpp"
#include "boomfleet/motion_graph.hpp"

namespace boomfleet {

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t z = a * 0x9E3779B97F4A7C15ULL + b + 0x632BE59BD9B4E019ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

Scenario benchmark_scenario(const BenchmarkSpec& spec, int p, int k, std::uint64_t seed)
{
    ScenarioParams params = spec.scenario;
    const Workspace& ws = params.workspace;
    if (spec.obstacle_coverage > 0.0) {
        params.workspace.obstacles = random_obstacle_field(mix(seed, 0), ws.bounds, ws.grid_resolution,
                                                           spec.obstacle_coverage, params.depot);
    }
    return generate_random_scenario(mix(seed, static_cast<std::uint64_t>(p)), p, k, params);
}

std::vector<BenchmarkRow> run_routing_benchmark(const BenchmarkSpec& spec)
{
    struct Job {
        int p, k;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (int p : spec.spill_counts) {
        for (int k : spec.fleet_sizes) {
            if (p < 0 || k < 1) throw Error(ErrorCode::config, "benchmark needs p >= 0 and k >= 1");
            for (std::uint64_t s : spec.seeds) jobs.push_back({p, k, s});
        }
    }
    std::vector<BenchmarkRow> rows(jobs.size());
    std::vector<std::string> failures(jobs.size());
    const auto n = static_cast<std::int64_t>(jobs.size());

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        const Job& job = jobs[i];
        BenchmarkRow& row = rows[i];
        row.spills = job.p;
        row.agents = job.k;
        row.seed = job.seed;
        try {
            const Scenario sc = benchmark_scenario(spec, job.p, job.k, job.seed);
            const MotionGraph g = build_motion_graph_serial(sc, rasterize(sc.workspace));
            row.greedy = evaluate_damage(g, greedy_assign(g, job.k)).damage;
            HeuristicConfig h = spec.heuristic;
            h.use_dp = h.use_ils = true;
            const HeuristicResult heur = run_heuristic(g, job.k, h);
            row.heuristic = heur.objective;
            row.cold = solve_exact_bnb(g, job.k, std::nullopt, spec.bnb);
            row.warm = solve_exact_bnb(g, job.k, heur.best, spec.bnb);
            row.lower_bound = std::max(row.cold.lower_bound, row.warm.lower_bound);
            row.heuristic_improvement = row.greedy > 0.0 ? (row.greedy - row.heuristic) / row.greedy : 0.0;
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    }
    for (const auto& f : failures) {
        if (!f.empty()) throw Error(ErrorCode::numeric, "benchmark instance failed: " + f);
    }
    return rows;
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows)
{
    std::ostringstream os;
    os << "spills,agents,seed,stage,objective,lower_bound,gap,nodes,hit_limit\n";
    for (const auto& r : rows) {
        const auto line = [&](const char* stage, double obj, std::int64_t nodes, bool hit) {
            os << r.spills << ',' << r.agents << ',' << r.seed << ',' << stage << ',' << format_double(obj) << ','
               << format_double(r.lower_bound) << ',' << format_double(relative_gap(obj, r.lower_bound)) << ','
               << nodes << ',' << (hit ? 1 : 0) << '\n';
        };
        line("greedy", r.greedy, 0, false);
        line("heuristic", r.heuristic, 0, false);
        line("bnb_cold", r.cold.objective, r.cold.nodes_explored, r.cold.hit_limit);
        line("bnb_warm", r.warm.objective, r.warm.nodes_explored, r.warm.hit_limit);
    }
    return os.str();
}

}  // namespace boomfleet
