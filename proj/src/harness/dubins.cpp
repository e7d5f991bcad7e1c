#include "boomfleet/dubins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "boomfleet/error.hpp"

namespace boomfleet {

std::string to_string(DubinsWord w)
{
    switch (w) {
    case DubinsWord::LSL: return "LSL";
    case DubinsWord::RSR: return "RSR";
    case DubinsWord::LSR: return "LSR";
    case DubinsWord::RSL: return "RSL";
    case DubinsWord::RLR: return "RLR";
    case DubinsWord::LRL: return "LRL";
    }
    return "?";
}

DubinsPath::DubinsPath(Pose start, double rho, DubinsWord word, std::array<double, 3> segments)
    : start_(start), rho_(rho), word_(word), segments_(segments)
{
}

namespace {

// 'L', 'S' or 'R' for segment i of the word
char kind(DubinsWord w, int i)
{
    static const char* names[] = {"LSL", "RSR", "LSR", "RSL", "RLR", "LRL"};
    return names[static_cast<int>(w)][i];
}

Pose advance(Pose q, char k, double len, double rho)
{
    if (k == 'S') return {q.x + len * std::cos(q.theta), q.y + len * std::sin(q.theta), q.theta};
    const double sgn = k == 'L' ? 1.0 : -1.0;
    const double phi = len / rho;
    // turning centre sits on the side of the turn
    const double cx = q.x - sgn * rho * std::sin(q.theta);
    const double cy = q.y + sgn * rho * std::cos(q.theta);
    const double th = q.theta + sgn * phi;
    return {cx + sgn * rho * std::sin(th), cy - sgn * rho * std::cos(th), th};
}

}  // namespace

Pose DubinsPath::at(double s) const
{
    s = std::clamp(s, 0.0, length());
    Pose q = start_;
    for (int i = 0; i < 3; ++i) {
        const double take = std::min(s, segments_[i]);
        q = advance(q, kind(word_, i), take, rho_);
        s -= take;
        if (s <= 0.0) break;
    }
    return q;
}

std::vector<Vec2> DubinsPath::polyline(double step) const
{
    std::vector<Vec2> pts;
    const double total = length();
    const int n = std::max(1, static_cast<int>(std::ceil(total / step)));
    for (int i = 0; i <= n; ++i) {
        const Pose q = at(total * i / n);
        pts.push_back({q.x, q.y});
    }
    return pts;
}

std::optional<DubinsPath> dubins_word(Pose start, Pose goal, double rho, DubinsWord word)
{
    const double dx = goal.x - start.x;
    const double dy = goal.y - start.y;
    const double d = std::hypot(dx, dy) / rho;
    const double th = d > 0.0 ? mod_two_pi(std::atan2(dy, dx)) : 0.0;
    const double a = mod_two_pi(start.theta - th);
    const double b = mod_two_pi(goal.theta - th);
    const double sa = std::sin(a), sb = std::sin(b), ca = std::cos(a), cb = std::cos(b);
    const double cab = std::cos(a - b);
    double t = 0.0, p = 0.0, q = 0.0;
    switch (word) {
    case DubinsWord::LSL: {
        const double p2 = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sa - sb);
        if (p2 < 0.0) return std::nullopt;
        const double tmp = std::atan2(cb - ca, d + sa - sb);
        t = mod_two_pi(-a + tmp);
        p = std::sqrt(p2);
        q = mod_two_pi(b - tmp);
        break;
    }
    case DubinsWord::RSR: {
        const double p2 = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sb - sa);
        if (p2 < 0.0) return std::nullopt;
        const double tmp = std::atan2(ca - cb, d - sa + sb);
        t = mod_two_pi(a - tmp);
        p = std::sqrt(p2);
        q = mod_two_pi(-b + tmp);
        break;
    }
    case DubinsWord::LSR: {
        const double p2 = -2.0 + d * d + 2.0 * cab + 2.0 * d * (sa + sb);
        if (p2 < 0.0) return std::nullopt;
        p = std::sqrt(p2);
        const double tmp = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
        t = mod_two_pi(-a + tmp);
        q = mod_two_pi(-b + tmp);
        break;
    }
    case DubinsWord::RSL: {
        const double p2 = d * d - 2.0 + 2.0 * cab - 2.0 * d * (sa + sb);
        if (p2 < 0.0) return std::nullopt;
        p = std::sqrt(p2);
        const double tmp = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
        t = mod_two_pi(a - tmp);
        q = mod_two_pi(b - tmp);
        break;
    }
    case DubinsWord::RLR: {
        const double tmp = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sa - sb)) / 8.0;
        if (std::abs(tmp) > 1.0) return std::nullopt;
        p = mod_two_pi(2.0 * std::numbers::pi - std::acos(tmp));
        t = mod_two_pi(a - std::atan2(ca - cb, d - sa + sb) + p / 2.0);
        q = mod_two_pi(a - b - t + p);
        break;
    }
    case DubinsWord::LRL: {
        const double tmp = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sb - sa)) / 8.0;
        if (std::abs(tmp) > 1.0) return std::nullopt;
        p = mod_two_pi(2.0 * std::numbers::pi - std::acos(tmp));
        t = mod_two_pi(-a - std::atan2(ca - cb, d + sa - sb) + p / 2.0);
        q = mod_two_pi(b - a - t + p);
        break;
    }
    }
    return DubinsPath(start, rho, word, {t * rho, p * rho, q * rho});
}

DubinsPath dubins_path(Pose start, Pose goal, double rho)
{
    if (!(rho > 0.0)) throw Error(ErrorCode::config, "turning radius must be positive");
    const bool same_point = std::hypot(goal.x - start.x, goal.y - start.y) < 1e-12;
    if (same_point && std::abs(wrap_angle(goal.theta - start.theta)) < 1e-12) {
        return DubinsPath(start, rho, DubinsWord::LSL, {0.0, 0.0, 0.0});
    }
    std::optional<DubinsPath> best;
    for (const DubinsWord w :
         {DubinsWord::LSL, DubinsWord::RSR, DubinsWord::LSR, DubinsWord::RSL, DubinsWord::RLR, DubinsWord::LRL}) {
        const auto cand = dubins_word(start, goal, rho, w);
        if (cand && (!best || cand->length() < best->length() - 1e-12)) best = cand;
    }
    return *best;
}

}  // namespace boomfleet
