#include "boomfleet/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "boomfleet/error.hpp"

namespace boomfleet {

double relative_gap(double objective, double lower_bound)
{
    if (objective == 0.0) return 0.0;
    return (objective - lower_bound) / objective;
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr int close_child = -1;

struct Child {
    double bound = 0.0;
    double ratio = 0.0;
    int spill = close_child;
};

class Search {
public:
    Search(const MotionGraph& graph, int k, const BnbConfig& config)
        : g_(graph), p_(graph.spill_count()), k_(k), config_(config)
    {
        min_in_.assign(static_cast<std::size_t>(p_) + 1, inf);
        for (int u = 1; u <= p_; ++u) {
            for (int i = 0; i <= p_; ++i) {
                if (i != u) min_in_[u] = std::min(min_in_[u], g_.cost(i, u));
            }
        }
        unassigned_.assign(static_cast<std::size_t>(p_) + 1, 1);
        unassigned_[0] = 0;
        for (int u = 1; u <= p_; ++u) {
            weight_left_ += g_.risk(u);
            slack_left_ += g_.risk(u) * min_in_[u];
        }
        routes_.assign(static_cast<std::size_t>(k_), {});
        time_.assign(static_cast<std::size_t>(k_), 0.0);
        last_.assign(static_cast<std::size_t>(k_), 0);
        active_.assign(static_cast<std::size_t>(k_), 1);
        children_.resize(static_cast<std::size_t>(p_ + k_) + 2);
        start_ = std::chrono::steady_clock::now();
    }

    void set_incumbent(const RouteSet& r, double value)
    {
        best_ = r;
        best_value_ = value;
        have_best_ = true;
    }

    void run()
    {
        const double root = accrued_ + bound_tail(0.0, weight_left_, slack_left_);
        dfs(root, 0);
    }

    bool aborted() const { return aborted_; }
    double open_bound() const { return open_bound_; }
    std::int64_t nodes() const { return nodes_; }
    bool have_best() const { return have_best_; }
    const RouteSet& best() const { return best_; }
    double best_value() const { return best_value_; }
    double elapsed() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    static double bound_tail(double t_min, double weight, double slack)
    {
        return weight > 0.0 ? t_min * weight + slack : 0.0;
    }

    bool out_of_budget()
    {
        if (config_.node_limit >= 0 && nodes_ >= config_.node_limit) return true;
        if ((nodes_ & 1023) == 0 && elapsed() >= config_.time_limit) return true;
        return false;
    }

    void dfs(double bound, int depth)
    {
        if (out_of_budget()) {
            aborted_ = true;
            open_bound_ = std::min(open_bound_, bound);
            return;
        }
        ++nodes_;
        if (assigned_count_ == p_) {
            if (accrued_ < best_value_) {
                best_value_ = accrued_;
                best_ = RouteSet{routes_};
                have_best_ = true;
            }
            return;
        }

        int agent = -1;
        for (int a = 0; a < k_; ++a) {
            if (active_[a] && (agent < 0 || time_[a] < time_[agent])) agent = a;
        }
        if (agent < 0) return;
        double others = inf;
        for (int a = 0; a < k_; ++a) {
            if (a != agent && active_[a]) others = std::min(others, time_[a]);
        }
        const bool fresh = routes_[agent].empty();
        const int first_floor = (fresh && agent > 0) ? routes_[agent - 1].front() : 0;
        const int from = last_[agent];

        auto& kids = children_[depth];
        kids.clear();
        for (int u = 1; u <= p_; ++u) {
            if (!unassigned_[u] || u <= first_floor) continue;
            const double c = g_.cost(from, u);
            const double t = time_[agent] + c;
            const double r = g_.risk(u);
            const double b = accrued_ + r * t + bound_tail(std::min(others, t), weight_left_ - r, slack_left_ - r * min_in_[u]);
            if (b >= best_value_) continue;
            kids.push_back({b, c > 0.0 ? r / c : inf, u});
        }
        std::sort(kids.begin(), kids.end(), [](const Child& a, const Child& b) {
            if (a.ratio != b.ratio) return a.ratio > b.ratio;
            return a.spill < b.spill;
        });
        double remaining = inf;
        for (int a = 0; a < k_; ++a) {
            if (a != agent && active_[a] && !(fresh && routes_[a].empty())) remaining = std::min(remaining, time_[a]);
        }
        if (remaining < inf) {
            const double b = accrued_ + bound_tail(remaining, weight_left_, slack_left_);
            if (b < best_value_) kids.push_back({b, 0.0, close_child});
        }

        for (std::size_t idx = 0; idx < kids.size(); ++idx) {
            const Child child = kids[idx];
            if (aborted_) {
                if (child.bound < best_value_) open_bound_ = std::min(open_bound_, child.bound);
                continue;
            }
            if (child.bound >= best_value_) continue;
            if (child.spill == close_child) {
                std::vector<int> closed;
                if (fresh) {
                    for (int a = agent; a < k_; ++a) {
                        if (active_[a] && routes_[a].empty()) {
                            active_[a] = 0;
                            closed.push_back(a);
                        }
                    }
                } else {
                    active_[agent] = 0;
                    closed.push_back(agent);
                }
                dfs(child.bound, depth + 1);
                for (const int a : closed) active_[a] = 1;
            } else {
                const int u = child.spill;
                const double r = g_.risk(u);
                const double saved_time = time_[agent];
                const double saved_accrued = accrued_;
                const double saved_weight = weight_left_;
                const double saved_slack = slack_left_;
                time_[agent] += g_.cost(from, u);
                accrued_ += r * time_[agent];
                weight_left_ -= r;
                slack_left_ -= r * min_in_[u];
                if (assigned_count_ + 1 == p_) {
                    weight_left_ = 0.0;
                    slack_left_ = 0.0;
                }
                unassigned_[u] = 0;
                ++assigned_count_;
                routes_[agent].push_back(u);
                last_[agent] = u;

                dfs(child.bound, depth + 1);

                routes_[agent].pop_back();
                last_[agent] = from;
                --assigned_count_;
                unassigned_[u] = 1;
                time_[agent] = saved_time;
                accrued_ = saved_accrued;
                weight_left_ = saved_weight;
                slack_left_ = saved_slack;
            }
        }
    }

    const MotionGraph& g_;
    int p_;
    int k_;
    BnbConfig config_;
    std::vector<double> min_in_;
    std::vector<char> unassigned_;
    std::vector<std::vector<int>> routes_;
    std::vector<double> time_;
    std::vector<int> last_;
    std::vector<char> active_;
    std::vector<std::vector<Child>> children_;
    int assigned_count_ = 0;
    double accrued_ = 0.0;
    double weight_left_ = 0.0;
    double slack_left_ = 0.0;

    RouteSet best_;
    double best_value_ = inf;
    bool have_best_ = false;
    bool aborted_ = false;
    double open_bound_ = inf;
    std::int64_t nodes_ = 0;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

SolveReport solve_exact_bnb(const MotionGraph& graph, int k, const std::optional<RouteSet>& incumbent,
                            const BnbConfig& config)
{
    if (k < 1) throw Error(ErrorCode::config, "fleet size must be at least 1");
    if (!(config.time_limit > 0.0)) throw Error(ErrorCode::config, "time limit must be positive");

    Search search(graph, k, config);
    SolveReport report;
    if (incumbent) {
        if (static_cast<int>(incumbent->routes.size()) > k) {
            throw Error(ErrorCode::invalid_routeset, "incumbent uses more routes than agents");
        }
        RouteSet padded = *incumbent;
        padded.routes.resize(static_cast<std::size_t>(k));
        search.set_incumbent(padded, evaluate_damage(graph, padded).damage);
        report.stage_log.push_back({"incumbent", search.best_value()});
    }
    search.run();

    report.nodes_explored = search.nodes();
    report.wall_time = search.elapsed();
    report.hit_limit = search.aborted();
    report.optimal = !search.aborted();
    if (search.have_best()) {
        report.best = search.best();
    } else {
        report.best = greedy_assign(graph, k);
        report.stage_log.push_back({"fallback-greedy", evaluate_damage(graph, report.best).damage});
    }
    report.objective = evaluate_damage(graph, report.best).damage;
    if (report.optimal) {
        report.lower_bound = report.objective;
    } else {
        report.lower_bound = std::min(report.objective, search.open_bound());
    }
    report.gap = relative_gap(report.objective, report.lower_bound);
    report.stage_log.push_back({"bnb", report.objective});
    return report;
}

}  // namespace boomfleet
