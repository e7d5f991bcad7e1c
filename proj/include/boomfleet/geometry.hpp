#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace boomfleet {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }
// Left-hand normal of a direction angle.
inline Vec2 left_normal(double theta) { return {-std::sin(theta), std::cos(theta)}; }

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a <= -std::numbers::pi) a += two_pi;
    else if (a > std::numbers::pi) a -= two_pi;
    return a;
}

/// Wraps an angle to [0, 2pi).
inline double mod_two_pi(double a)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a < 0.0) a += two_pi;
    return a;
}

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;

    Vec2 position() const { return {x, y}; }
};

struct Rect {
    Vec2 min;
    Vec2 max;

    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
    double area() const { return width() * height(); }
    bool contains(Vec2 p) const { return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y; }
};

struct Polygon {
    std::vector<Vec2> vertices;
};

/// Signed shoelace area (positive for counter-clockwise vertex order).
double signed_area(const std::vector<Vec2>& ring);

/// True when no two non-adjacent edges touch and there are at least three vertices.
bool is_simple(const Polygon& poly);

/// Even-odd point-in-polygon test (boundary points count as inside).
bool contains(const Polygon& poly, Vec2 p);

/// Area of the intersection of a simple polygon with an axis-aligned rectangle.
double clipped_area(const Polygon& poly, const Rect& rect);

/// Distance from p to segment [a, b].
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

double polyline_length(const std::vector<Vec2>& pts);

}  // namespace boomfleet
