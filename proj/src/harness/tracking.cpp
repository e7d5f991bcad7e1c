#include "boomfleet/tracking.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "boomfleet/error.hpp"
#include "boomfleet/format.hpp"

namespace boomfleet {

CrossTrack::CrossTrack(std::vector<Vec2> reference, double window) : ref_(std::move(reference)), window_(window)
{
    if (ref_.size() < 2) throw Error(ErrorCode::config, "reference path needs at least two points");
    s_.push_back(0.0);
    for (std::size_t i = 1; i < ref_.size(); ++i) s_.push_back(s_.back() + norm(ref_[i] - ref_[i - 1]));
}

CrossTrack::Sample CrossTrack::measure(const Pose& pose)
{
    const Vec2 p{pose.x, pose.y};
    const double s0 = s_[cursor_];
    std::size_t lo = cursor_;
    while (lo > 0 && s_[lo] > s0 - 0.25 * window_) --lo;
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = lo;
    for (std::size_t i = lo; i + 1 < ref_.size() && s_[i] <= s0 + window_; ++i) {
        const double d = point_segment_distance(p, ref_[i], ref_[i + 1]);
        if (d < best) {
            best = d;
            arg = i;
        }
    }
    cursor_ = arg;
    const Vec2 a = ref_[arg];
    const Vec2 b = ref_[arg + 1];
    const double side = cross(b - a, p - a) >= 0.0 ? 1.0 : -1.0;
    return {side * best, wrap_angle(pose.theta - std::atan2(b.y - a.y, b.x - a.x))};
}

namespace {

Pose pose_of(const VesselState& v) { return {v.x, v.y, v.theta}; }

LogRow make_row(const DuoState& s, const Controls& c, const DuoParams& p)
{
    LogRow r;
    r.t = s.t;
    r.vessel = {s.vessel1, s.vessel2};
    r.controls = c;
    r.tow = {s.f_l1, s.f_l2};
    const auto& links = s.boom.links;
    r.boom_mid = links.empty() ? Vec2{} : links[links.size() / 2].p;
    r.separation = stern_separation(s, p);
    return r;
}

}  // namespace

PlanRun run_plan(const SetpointPlan& plan, const DuoState& start, const SimulationOptions& sim,
                 std::array<CrossTrack*, 2> errors)
{
    sim.duo.validate();
    const double dt = sim.duo.dt;
    const long ctrl_every = std::max(1L, std::lround(sim.controller.control_dt / dt));
    const long log_every = std::max(1L, std::lround(sim.log_interval / dt));
    const double ctrl_dt = ctrl_every * dt;
    const long max_steps = std::lround(sim.duration_cap / dt);

    DuoController controller(sim.controller, sim.duo.vessel);
    SupervisorState sup;
    PlanRun run;
    run.released.assign(plan.left.size(), -1.0);
    DuoState s = start;
    Controls controls;
    for (long k = 0;; ++k) {
        if (k % ctrl_every == 0) {
            const int index_before = sup.index;
            const References refs = supervisor_step(plan, sup, pose_of(s.vessel1), pose_of(s.vessel2), ctrl_dt);
            for (int i = index_before; i < sup.index; ++i) run.released[i] = s.t;
            if (sup.mode == SupervisorMode::done) {
                if (!run.released.empty() && run.released.back() < 0.0) run.released.back() = s.t;
                run.complete = true;
                run.finish_time = s.t;
            } else {
                controls = controller.compute(s, refs, ctrl_dt);
            }
        }
        const double sep = stern_separation(s, sim.duo);
        run.max_separation = std::max(run.max_separation, sep);
        if (k % log_every == 0 || run.complete) {
            LogRow row = make_row(s, controls, sim.duo);
            for (int i = 0; i < 2; ++i) {
                if (!errors[i]) continue;
                const auto e = errors[i]->measure(pose_of(i == 0 ? s.vessel1 : s.vessel2));
                row.cross_track[i] = e.cross_track;
                row.heading_error[i] = e.heading_error * 180.0 / std::numbers::pi;
            }
            run.max_joint_gap = std::max(run.max_joint_gap, max_joint_gap(s, sim.duo));
            run.log.push_back(row);
        }
        if (run.complete || k >= max_steps) break;
        s = step(s, controls, dt, sim.duo);
    }
    if (!run.complete) run.finish_time = s.t;
    run.final_state = s;
    return run;
}

TrackingResult run_tracking_experiment(const TrackingExperiment& exp, const SimulationOptions& sim)
{
    if (!(exp.rho > 0.0) || !(exp.v_ref > 0.0)) throw Error(ErrorCode::config, "rho and v_ref must be positive");
    const DubinsPath path = dubins_path(exp.start, exp.goal, exp.rho);
    PlanOptions opts = exp.plan;
    opts.u_cruise = exp.v_ref;
    const SetpointPlan plan = path_to_setpoints(path, opts, sim.duo.boom.total_length);

    const double half = 0.5 * opts.lateral_offset;
    std::vector<Vec2> left, right;
    const double total = path.length();
    const int n = std::max(1, static_cast<int>(std::ceil(total / exp.reference_step)));
    for (int i = 0; i <= n; ++i) {
        const Pose q = path.at(total * i / n);
        const Vec2 c{q.x, q.y};
        left.push_back(c + half * left_normal(q.theta));
        right.push_back(c - half * left_normal(q.theta));
    }
    CrossTrack e1(left), e2(right);

    const Vec2 c{exp.start.x, exp.start.y};
    const Vec2 nrm = left_normal(exp.start.theta);
    const Vec2 p1 = c + 0.5 * exp.start_separation * nrm;
    const Vec2 p2 = c - 0.5 * exp.start_separation * nrm;
    VesselState v1{p1.x, p1.y, exp.start.theta, 0.0, 0.0, 0.0};
    VesselState v2{p2.x, p2.y, exp.start.theta, 0.0, 0.0, 0.0};
    const DuoState start = make_duo(v1, v2, sim.duo);

    PlanRun run = run_plan(plan, start, sim, {&e1, &e2});
    TrackingResult r;
    r.complete = run.complete;
    r.finish_time = run.finish_time;
    r.max_separation = run.max_separation;
    r.max_joint_gap = run.max_joint_gap;
    r.word = to_string(path.word());
    for (int i = 0; i < 2; ++i) {
        double ct = 0.0, he = 0.0;
        for (const auto& row : run.log) {
            ct += row.cross_track[i] * row.cross_track[i];
            he += row.heading_error[i] * row.heading_error[i];
        }
        const double count = static_cast<double>(std::max<std::size_t>(run.log.size(), 1));
        r.vessel[i] = {std::sqrt(ct / count), std::sqrt(he / count)};
    }
    r.log = std::move(run.log);
    return r;
}

namespace {

void put(std::ostringstream& os, double v) { os << ',' << format_double(v); }

}  // namespace

std::string trajectory_csv(const std::vector<LogRow>& log)
{
    std::ostringstream os;
    os << "t";
    for (int i = 1; i <= 2; ++i) {
        for (const char* f : {"x", "y", "theta", "u", "v", "omega", "F", "eta", "fl_u", "fl_v"}) os << ',' << f << '_' << i;
    }
    os << ",boom_mid_x,boom_mid_y,separation\n";
    for (const auto& r : log) {
        os << format_double(r.t);
        for (int i = 0; i < 2; ++i) {
            const VesselState& v = r.vessel[i];
            put(os, v.x);
            put(os, v.y);
            put(os, wrap_angle(v.theta));
            put(os, v.u);
            put(os, v.v);
            put(os, v.omega);
            put(os, i == 0 ? r.controls.F1 : r.controls.F2);
            put(os, i == 0 ? r.controls.eta1 : r.controls.eta2);
            put(os, r.tow[i].x);
            put(os, r.tow[i].y);
        }
        put(os, r.boom_mid.x);
        put(os, r.boom_mid.y);
        put(os, r.separation);
        os << '\n';
    }
    return os.str();
}

std::string error_csv(const std::vector<LogRow>& log)
{
    std::ostringstream os;
    os << "t,cross_track_1,heading_err_1,cross_track_2,heading_err_2,u_1,u_2\n";
    for (const auto& r : log) {
        os << format_double(r.t);
        put(os, r.cross_track[0]);
        put(os, r.heading_error[0]);
        put(os, r.cross_track[1]);
        put(os, r.heading_error[1]);
        put(os, r.vessel[0].u);
        put(os, r.vessel[1].u);
        os << '\n';
    }
    return os.str();
}

bool RmseMap::all_complete() const
{
    for (const auto& c : cells) {
        if (!c.result.complete) return false;
    }
    return true;
}

namespace {

RmseMap sweep(const SweepSpec& spec, const SimulationOptions& sim, bool parallel)
{
    if (spec.rho.empty() || spec.v_ref.empty()) throw Error(ErrorCode::config, "sweep grid must be non-empty");
    RmseMap map;
    map.controller = sim.controller.type;
    map.rho = spec.rho;
    map.v_ref = spec.v_ref;
    const std::int64_t count = static_cast<std::int64_t>(spec.rho.size() * spec.v_ref.size());
    map.cells.resize(static_cast<std::size_t>(count));
    std::vector<std::string> failures(static_cast<std::size_t>(count));
    const auto run_cell = [&](std::int64_t idx) {
        SweepCell& cell = map.cells[idx];
        cell.rho = spec.rho[idx / spec.v_ref.size()];
        cell.v_ref = spec.v_ref[idx % spec.v_ref.size()];
        TrackingExperiment exp = spec.base;
        exp.rho = cell.rho;
        exp.v_ref = cell.v_ref;
        try {
            cell.result = run_tracking_experiment(exp, sim);
            cell.result.log.clear();
            cell.result.log.shrink_to_fit();
        } catch (const std::exception& e) {
            failures[idx] = e.what();
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t idx = 0; idx < count; ++idx) run_cell(idx);
    } else {
        for (std::int64_t idx = 0; idx < count; ++idx) run_cell(idx);
    }
    for (const auto& f : failures) {
        if (!f.empty()) throw Error(ErrorCode::numeric, "sweep cell failed: " + f);
    }
    return map;
}

}  // namespace

RmseMap run_rmse_sweep(const SweepSpec& spec, const SimulationOptions& sim) { return sweep(spec, sim, true); }
RmseMap run_rmse_sweep_serial(const SweepSpec& spec, const SimulationOptions& sim) { return sweep(spec, sim, false); }

std::string rmse_csv(const std::vector<RmseMap>& maps)
{
    std::ostringstream os;
    os << "controller,rho,v_ref,complete,finish_time,cross_track_rmse_1,heading_rmse_1,cross_track_rmse_2,heading_rmse_2\n";
    for (const auto& m : maps) {
        for (const auto& c : m.cells) {
            os << to_string(m.controller);
            put(os, c.rho);
            put(os, c.v_ref);
            os << ',' << (c.result.complete ? 1 : 0);
            put(os, c.result.finish_time);
            put(os, c.result.vessel[0].cross_track_rmse);
            put(os, c.result.vessel[0].heading_rmse);
            put(os, c.result.vessel[1].cross_track_rmse);
            put(os, c.result.vessel[1].heading_rmse);
            os << '\n';
        }
    }
    return os.str();
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v;
    if (n == 1) return {lo};
    for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
    return v;
}

}  // namespace boomfleet
