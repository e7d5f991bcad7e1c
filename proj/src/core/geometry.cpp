#include "boomfleet/geometry.hpp"

#include <algorithm>

namespace boomfleet {

double signed_area(const std::vector<Vec2>& ring)
{
    double a = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        a += cross(ring[i], ring[(i + 1) % n]);
    }
    return 0.5 * a;
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c)
{
    const double v = cross(b - a, c - a);
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p)
{
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_touch(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2)
{
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment(q1, q2, p2)) return true;
    return false;
}

}  // namespace

bool is_simple(const Polygon& poly)
{
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n < 3) return false;
    if (signed_area(v) == 0.0) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a1 = v[i];
        const Vec2 a2 = v[(i + 1) % n];
        if (a1 == a2) return false;
        for (std::size_t j = i + 1; j < n; ++j) {
            // adjacent edges share a vertex by construction
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_touch(a1, a2, v[j], v[(j + 1) % n])) return false;
        }
    }
    return true;
}

bool contains(const Polygon& poly, Vec2 p)
{
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        if (point_segment_distance(p, v[j], v[i]) == 0.0) return true;
        if ((v[i].y > p.y) != (v[j].y > p.y)) {
            const double x = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside;
}

namespace {

// One Sutherland-Hodgman pass against the half-plane keep(p) >= 0, where
// keep is affine along an axis.
template <typename Inside, typename Intersect>
std::vector<Vec2> clip_pass(const std::vector<Vec2>& in, Inside inside, Intersect intersect)
{
    std::vector<Vec2> out;
    const std::size_t n = in.size();
    if (n == 0) return out;
    out.reserve(n + 4);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 cur = in[i];
        const Vec2 prev = in[(i + n - 1) % n];
        const bool cin = inside(cur);
        const bool pin = inside(prev);
        if (cin) {
            if (!pin) out.push_back(intersect(prev, cur));
            out.push_back(cur);
        } else if (pin) {
            out.push_back(intersect(prev, cur));
        }
    }
    return out;
}

}  // namespace

double clipped_area(const Polygon& poly, const Rect& rect)
{
    std::vector<Vec2> ring = poly.vertices;
    const auto x_cut = [](double x) {
        return [x](Vec2 a, Vec2 b) {
            const double t = (x - a.x) / (b.x - a.x);
            return Vec2{x, a.y + t * (b.y - a.y)};
        };
    };
    const auto y_cut = [](double y) {
        return [y](Vec2 a, Vec2 b) {
            const double t = (y - a.y) / (b.y - a.y);
            return Vec2{a.x + t * (b.x - a.x), y};
        };
    };
    ring = clip_pass(ring, [&](Vec2 p) { return p.x >= rect.min.x; }, x_cut(rect.min.x));
    ring = clip_pass(ring, [&](Vec2 p) { return p.x <= rect.max.x; }, x_cut(rect.max.x));
    ring = clip_pass(ring, [&](Vec2 p) { return p.y >= rect.min.y; }, y_cut(rect.min.y));
    ring = clip_pass(ring, [&](Vec2 p) { return p.y <= rect.max.y; }, y_cut(rect.max.y));
    if (ring.size() < 3) return 0.0;
    return std::abs(signed_area(ring));
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b)
{
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return norm(p - a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return norm(p - (a + ab * t));
}

double polyline_length(const std::vector<Vec2>& pts)
{
    double len = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) len += norm(pts[i] - pts[i - 1]);
    return len;
}

}  // namespace boomfleet
