#include <algorithm>
#include <cmath>

#include "boomfleet/control.hpp"
#include "boomfleet/error.hpp"

namespace boomfleet {

PolylinePath::PolylinePath(std::vector<Vec2> points)
{
    for (const Vec2 p : points) {
        if (pts_.empty() || norm(p - pts_.back()) > 1e-12) pts_.push_back(p);
    }
    cumulative_.push_back(0.0);
    for (std::size_t i = 1; i < pts_.size(); ++i) cumulative_.push_back(cumulative_.back() + norm(pts_[i] - pts_[i - 1]));
}

Pose PolylinePath::at(double s) const
{
    if (pts_.size() < 2) {
        const Vec2 p = pts_.empty() ? Vec2{} : pts_.front();
        return {p.x, p.y, 0.0};
    }
    s = std::clamp(s, 0.0, length());
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    std::size_t seg = static_cast<std::size_t>(std::distance(cumulative_.begin(), it));
    seg = std::clamp<std::size_t>(seg, 1, pts_.size() - 1) - 1;
    const Vec2 a = pts_[seg];
    const Vec2 b = pts_[seg + 1];
    const double len = cumulative_[seg + 1] - cumulative_[seg];
    const double f = (s - cumulative_[seg]) / len;
    const Vec2 p = a + f * (b - a);
    double heading = std::atan2(b.y - a.y, b.x - a.x);
    const bool at_start_vertex = f <= 1e-12 && seg > 0;
    const bool at_end_vertex = f >= 1.0 - 1e-12 && seg + 2 < pts_.size();
    if (at_start_vertex || at_end_vertex) {
        const Vec2 d0 = at_start_vertex ? a - pts_[seg - 1] : b - a;
        const Vec2 d1 = at_start_vertex ? b - a : pts_[seg + 2] - b;
        const Vec2 bis = d0 / norm(d0) + d1 / norm(d1);
        if (norm(bis) > 1e-12) heading = std::atan2(bis.y, bis.x);
    }
    return {p.x, p.y, heading};
}

namespace {

std::vector<double> samples(double length, double spacing)
{
    std::vector<double> s;
    for (int i = 0;; ++i) {
        const double v = i * spacing;
        if (v >= length - 1e-9) break;
        s.push_back(v);
    }
    s.push_back(length);
    return s;
}

void check_offset(double lateral_offset, double boom_length)
{
    if (!(lateral_offset < boom_length)) {
        throw Error(ErrorCode::config, "lateral offset must be strictly smaller than the boom length");
    }
    if (!(lateral_offset >= 0.0)) throw Error(ErrorCode::config, "lateral offset must be non-negative");
}

}  // namespace

SetpointPlan path_to_setpoints(const PathCurve& path, const PlanOptions& o, double boom_length)
{
    check_offset(o.lateral_offset, boom_length);
    if (!(o.spacing > 0.0)) throw Error(ErrorCode::config, "setpoint spacing must be positive");
    if (!(path.length() > 0.0)) throw Error(ErrorCode::config, "path length must be positive");
    SetpointPlan plan;
    plan.u_cruise = o.u_cruise;
    plan.arrival_radius = o.arrival_radius;
    plan.lateral_offset = o.lateral_offset;
    append_path(plan, path, o.spacing, -1.0, 0.0, boom_length);
    return plan;
}

void append_path(SetpointPlan& plan, const PathCurve& path, double spacing, double speed, double final_dwell,
                 double boom_length, double lateral_offset)
{
    const double offset = lateral_offset < 0.0 ? plan.lateral_offset : lateral_offset;
    check_offset(offset, boom_length);
    if (!(spacing > 0.0)) throw Error(ErrorCode::config, "setpoint spacing must be positive");
    const double half = 0.5 * offset;
    const auto s = samples(std::max(path.length(), 0.0), spacing);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i == 0 && !plan.left.empty()) continue;
        const Pose q = path.at(s[i]);
        const Vec2 c{q.x, q.y};
        const Vec2 n = left_normal(q.theta);
        const double dwell = i + 1 == s.size() ? final_dwell : 0.0;
        plan.left.push_back({c + half * n, q.theta, speed, dwell});
        plan.right.push_back({c - half * n, q.theta, speed, dwell});
    }
}

namespace {

bool reached(const Setpoint& sp, const Pose& pose, double radius)
{
    const Vec2 d = Vec2{pose.x, pose.y} - sp.p;
    if (norm(d) <= radius) return true;
    return dot(d, unit_from_angle(sp.heading)) >= 0.0;
}

double line_of_sight(const Setpoint& sp, const Pose& pose, double radius)
{
    const Vec2 d = sp.p - Vec2{pose.x, pose.y};
    if (norm(d) <= radius) return sp.heading;
    return std::atan2(d.y, d.x);
}

}  // namespace

References supervisor_step(const SetpointPlan& plan, SupervisorState& sup, const Pose& pose1, const Pose& pose2,
                           double dt)
{
    References out;
    const int last = static_cast<int>(plan.left.size()) - 1;
    if (last < 0) {
        sup.mode = SupervisorMode::done;
        out.theta_ref1 = pose1.theta;
        out.theta_ref2 = pose2.theta;
        return out;
    }

    // several index advances may happen in one call when setpoints are already behind both vessels
    for (int guard = 0; guard <= last + 1; ++guard) {
        if (sup.mode == SupervisorMode::done) break;
        if (sup.mode == SupervisorMode::dwell) {
            sup.dwell_left -= dt;
            if (sup.dwell_left > 1e-12) break;
            sup.dwell_left = 0.0;
            if (sup.index == last) {
                sup.mode = SupervisorMode::done;
                break;
            }
            ++sup.index;
            sup.arrived1 = sup.arrived2 = false;
            sup.mode = SupervisorMode::cruise;
            dt = 0.0;
        }
        const Setpoint& s1 = plan.left[sup.index];
        const Setpoint& s2 = plan.right[sup.index];
        sup.arrived1 = sup.arrived1 || reached(s1, pose1, plan.arrival_radius);
        sup.arrived2 = sup.arrived2 || reached(s2, pose2, plan.arrival_radius);
        if (!(sup.arrived1 && sup.arrived2)) break;
        if (s1.dwell > 0.0) {
            sup.mode = SupervisorMode::dwell;
            sup.dwell_left = s1.dwell;
            break;
        }
        if (sup.index == last) {
            sup.mode = SupervisorMode::done;
            break;
        }
        ++sup.index;
        sup.arrived1 = sup.arrived2 = false;
    }

    const Setpoint& s1 = plan.left[sup.index];
    const Setpoint& s2 = plan.right[sup.index];
    const bool hold_all = sup.mode != SupervisorMode::cruise;
    const double speed = s1.speed >= 0.0 ? s1.speed : plan.u_cruise;
    const bool hold1 = hold_all || sup.arrived1;
    const bool hold2 = hold_all || sup.arrived2;
    out.u_ref1 = hold1 ? 0.0 : speed;
    out.u_ref2 = hold2 ? 0.0 : (s2.speed >= 0.0 ? s2.speed : plan.u_cruise);
    out.theta_ref1 = hold1 ? s1.heading : line_of_sight(s1, pose1, plan.arrival_radius);
    out.theta_ref2 = hold2 ? s2.heading : line_of_sight(s2, pose2, plan.arrival_radius);
    return out;
}

}  // namespace boomfleet
