#include "boomfleet/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "boomfleet/error.hpp"

namespace boomfleet {

void VesselParams::validate() const
{
    if (!(m > 0.0) || !(I > 0.0) || !(r > 0.0)) throw Error(ErrorCode::config, "vessel m, I and r must be positive");
    if (!(kappa_l >= 0.0) || !(kappa_t >= 0.0) || !(kappa_w >= 0.0)) {
        throw Error(ErrorCode::config, "vessel drag coefficients must be non-negative");
    }
    if (!(F_max > 0.0)) throw Error(ErrorCode::config, "F_max must be positive");
    if (!(eta_max > 0.0) || eta_max > std::numbers::pi / 2 + 1e-12) {
        throw Error(ErrorCode::config, "eta_max must lie in (0, pi/2]");
    }
}

double BoomParams::inertia() const
{
    if (link_inertia >= 0.0) return link_inertia;
    const double ell = link_length();
    return link_mass * ell * ell / 12.0;
}

void BoomParams::validate() const
{
    if (n_links < 1) throw Error(ErrorCode::config, "boom needs at least one link");
    if (!(total_length > 0.0)) throw Error(ErrorCode::config, "boom length must be positive");
    if (!(link_mass > 0.0) || !(inertia() > 0.0)) throw Error(ErrorCode::config, "link mass and inertia must be positive");
    if (!(k_spring >= 0.0) || !(c_damper >= 0.0)) throw Error(ErrorCode::config, "joint constants must be non-negative");
    if (!(kappa_t_link >= 0.0) || !(kappa_l_link >= 0.0) || !(kappa_w_link >= 0.0)) {
        throw Error(ErrorCode::config, "link drag coefficients must be non-negative");
    }
}

double DuoParams::dt_cap() const
{
    if (boom.k_spring <= 0.0) return 0.05;
    return 0.2 / std::sqrt(boom.k_spring / boom.link_mass);
}

void DuoParams::validate() const
{
    vessel.validate();
    boom.validate();
    if (!(dt > 0.0) || dt > dt_cap()) throw Error(ErrorCode::config, "integration step outside (0, dt_cap]");
}

namespace {

bool finite(const VesselState& s)
{
    return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.theta) && std::isfinite(s.u) &&
           std::isfinite(s.v) && std::isfinite(s.omega);
}

}  // namespace

VesselState vessel_derivative(const VesselState& s, double F, double eta, Vec2 f_l, const VesselParams& p)
{
    if (!finite(s) || !std::isfinite(F) || !std::isfinite(eta) || !std::isfinite(f_l.x) || !std::isfinite(f_l.y)) {
        throw Error(ErrorCode::numeric, "non-finite vessel input");
    }
    const double c = std::cos(s.theta);
    const double sn = std::sin(s.theta);
    const double se = std::sin(eta);
    VesselState d;
    d.x = s.u * c - s.v * sn;
    d.y = s.u * sn + s.v * c;
    d.theta = s.omega;
    d.u = (F * std::cos(eta) - p.kappa_l * std::abs(s.u) * s.u + f_l.x) / p.m + s.omega * s.v;
    d.v = (-F * se - p.kappa_t * std::abs(s.v) * s.v + f_l.y) / p.m - s.omega * s.u;
    d.omega = (p.r * F * se - p.kappa_w * std::abs(s.omega) * s.omega - p.r * f_l.y) / p.I;
    return d;
}

Vec2 stern_point(const VesselState& s, const VesselParams& p) { return s.position() - p.r * s.e_u(); }

Vec2 stern_velocity(const VesselState& s, const VesselParams& p)
{
    return s.u * s.e_u() + (s.v - p.r * s.omega) * s.e_v();
}

Vec2 link_left(const Link& l, double ell) { return l.p - (0.5 * ell) * l.t_hat(); }
Vec2 link_right(const Link& l, double ell) { return l.p + (0.5 * ell) * l.t_hat(); }
Vec2 link_left_velocity(const Link& l, double ell) { return l.velocity() - (0.5 * ell * l.omega) * l.n_hat(); }
Vec2 link_right_velocity(const Link& l, double ell) { return l.velocity() + (0.5 * ell * l.omega) * l.n_hat(); }

Vec2 joint_force(Vec2 right_end, Vec2 right_vel, Vec2 left_end, Vec2 left_vel, double k, double c)
{
    const Vec2 gap = left_end - right_end;
    const double len = norm(gap);
    if (len < 1e-9) return {0.0, 0.0};
    const Vec2 e = gap / len;
    return k * gap + (c * dot(left_vel - right_vel, e)) * e;
}

JointForces boom_joint_forces(const BoomState& boom, Anchor stern1, Anchor stern2, const BoomParams& p)
{
    const int n = static_cast<int>(boom.links.size());
    const double ell = p.link_length();
    JointForces f;
    f.joint.resize(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        const Vec2 rp = j == 0 ? stern1.p : link_right(boom.links[j - 1], ell);
        const Vec2 rv = j == 0 ? stern1.v : link_right_velocity(boom.links[j - 1], ell);
        const Vec2 lp = j == n ? stern2.p : link_left(boom.links[j], ell);
        const Vec2 lv = j == n ? stern2.v : link_left_velocity(boom.links[j], ell);
        f.joint[j] = joint_force(rp, rv, lp, lv, p.k_spring, p.c_damper);
    }
    return f;
}

std::vector<Link> boom_derivative(const BoomState& boom, const JointForces& forces, const BoomParams& p)
{
    const double ell = p.link_length();
    const double inertia = p.inertia();
    std::vector<Link> d(boom.links.size());
    for (std::size_t i = 0; i < boom.links.size(); ++i) {
        const Link& l = boom.links[i];
        if (!std::isfinite(l.p.x) || !std::isfinite(l.p.y) || !std::isfinite(l.theta) || !std::isfinite(l.vt) ||
            !std::isfinite(l.vn) || !std::isfinite(l.omega)) {
            throw Error(ErrorCode::numeric, "non-finite boom state");
        }
        const Vec2 t = l.t_hat();
        const Vec2 n = l.n_hat();
        const Vec2 f0 = forces.on_left(static_cast<int>(i));
        const Vec2 f1 = forces.on_right(static_cast<int>(i));
        const Vec2 drag = (-p.kappa_t_link * std::abs(l.vt) * l.vt) * t + (-p.kappa_l_link * std::abs(l.vn) * l.vn) * n;
        const Vec2 total = f0 + f1 + drag;
        d[i].p = l.velocity();
        d[i].theta = l.omega;
        d[i].vt = dot(total, t) / p.link_mass + l.vn * l.omega;
        d[i].vn = dot(total, n) / p.link_mass - l.vt * l.omega;
        d[i].omega = (-p.kappa_w_link * std::abs(l.omega) * l.omega + 0.5 * ell * dot(f1 - f0, n)) / inertia;
    }
    return d;
}

Controls clamp_controls(const Controls& c, const VesselParams& p)
{
    Controls out;
    out.F1 = std::clamp(c.F1, -p.F_max, p.F_max);
    out.F2 = std::clamp(c.F2, -p.F_max, p.F_max);
    out.eta1 = std::clamp(c.eta1, -p.eta_max, p.eta_max);
    out.eta2 = std::clamp(c.eta2, -p.eta_max, p.eta_max);
    return out;
}

namespace {

Vec2 to_body(Vec2 f, double theta)
{
    const Vec2 eu = unit_from_angle(theta);
    const Vec2 ev = left_normal(theta);
    return {dot(f, eu), dot(f, ev)};
}

struct Derivative {
    VesselState v1;
    VesselState v2;
    std::vector<Link> links;
};

Derivative derivative(const DuoState& s, const Controls& c, const DuoParams& p)
{
    const Anchor a1{stern_point(s.vessel1, p.vessel), stern_velocity(s.vessel1, p.vessel)};
    const Anchor a2{stern_point(s.vessel2, p.vessel), stern_velocity(s.vessel2, p.vessel)};
    const JointForces f = boom_joint_forces(s.boom, a1, a2, p.boom);
    Derivative d;
    d.v1 = vessel_derivative(s.vessel1, c.F1, c.eta1, to_body(f.on_vessel1(), s.vessel1.theta), p.vessel);
    d.v2 = vessel_derivative(s.vessel2, c.F2, c.eta2, to_body(f.on_vessel2(), s.vessel2.theta), p.vessel);
    d.links = boom_derivative(s.boom, f, p.boom);
    return d;
}

VesselState add(const VesselState& s, const VesselState& d, double h)
{
    return {s.x + h * d.x, s.y + h * d.y, s.theta + h * d.theta, s.u + h * d.u, s.v + h * d.v, s.omega + h * d.omega};
}

Link add(const Link& s, const Link& d, double h)
{
    return {s.p + h * d.p, s.theta + h * d.theta, s.vt + h * d.vt, s.vn + h * d.vn, s.omega + h * d.omega};
}

DuoState advance(const DuoState& s, const Derivative& d, double h)
{
    DuoState out;
    out.vessel1 = add(s.vessel1, d.v1, h);
    out.vessel2 = add(s.vessel2, d.v2, h);
    out.boom.links.resize(s.boom.links.size());
    for (std::size_t i = 0; i < s.boom.links.size(); ++i) out.boom.links[i] = add(s.boom.links[i], d.links[i], h);
    out.t = s.t + h;
    return out;
}

// Solves l |sin(n d / 2) / sin(d / 2)| = chord for the turn angle d in (0, 2 pi / n).
double arc_turn_angle(int n, double ell, double chord)
{
    const auto span = [&](double d) { return ell * std::abs(std::sin(n * d / 2.0) / std::sin(d / 2.0)); };
    double lo = 1e-12;
    double hi = 2.0 * std::numbers::pi / n;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (span(mid) > chord) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

void update_tow_forces(DuoState& s, const DuoParams& p)
{
    const Anchor a1{stern_point(s.vessel1, p.vessel), stern_velocity(s.vessel1, p.vessel)};
    const Anchor a2{stern_point(s.vessel2, p.vessel), stern_velocity(s.vessel2, p.vessel)};
    const JointForces f = boom_joint_forces(s.boom, a1, a2, p.boom);
    s.f_l1 = to_body(f.on_vessel1(), s.vessel1.theta);
    s.f_l2 = to_body(f.on_vessel2(), s.vessel2.theta);
}

DuoState make_duo(const VesselState& v1, const VesselState& v2, const DuoParams& p)
{
    p.vessel.validate();
    p.boom.validate();
    DuoState s;
    s.vessel1 = v1;
    s.vessel2 = v2;
    const int n = p.boom.n_links;
    const double ell = p.boom.link_length();
    const Vec2 a = stern_point(v1, p.vessel);
    const Vec2 b = stern_point(v2, p.vessel);
    const Vec2 chord = b - a;
    const double c = norm(chord);
    s.boom.links.resize(static_cast<std::size_t>(n));

    if (c >= p.boom.total_length - 1e-12 || c < 1e-9) {
        const double phi = c < 1e-9 ? v1.theta + std::numbers::pi / 2 : std::atan2(chord.y, chord.x);
        const Vec2 dir = unit_from_angle(phi);
        // links spread evenly over the chord; any excess length becomes joint gap
        const double pitch = c < 1e-9 ? ell : c / n;
        const Vec2 start = c < 1e-9 ? a - (0.5 * p.boom.total_length) * dir : a;
        for (int i = 0; i < n; ++i) {
            s.boom.links[i].p = start + ((i + 0.5) * pitch) * dir;
            s.boom.links[i].theta = phi;
        }
    } else {
        const double delta = arc_turn_angle(n, ell, c);
        const double phi_c = std::atan2(chord.y, chord.x);
        const Vec2 heading = v1.e_u() + v2.e_u();
        const Vec2 back = norm(heading) > 1e-12 ? -heading : -v1.e_u();
        const double side = dot(left_normal(phi_c), back) >= 0.0 ? 1.0 : -1.0;
        Vec2 q = a;
        for (int i = 0; i < n; ++i) {
            const double phi = phi_c + side * (0.5 * (n - 1) - i) * delta;
            const Vec2 dir = unit_from_angle(phi);
            s.boom.links[i].p = q + (0.5 * ell) * dir;
            s.boom.links[i].theta = phi;
            q = q + ell * dir;
        }
    }
    update_tow_forces(s, p);
    return s;
}

DuoState step(const DuoState& s, const Controls& controls, double dt, const DuoParams& p)
{
    if (!(dt > 0.0) || dt > p.dt_cap() * (1.0 + 1e-12)) {
        throw Error(ErrorCode::config, "step " + std::to_string(dt) + " s outside (0, " + std::to_string(p.dt_cap()) + "]");
    }
    const Controls c = clamp_controls(controls, p.vessel);
    const Derivative k1 = derivative(s, c, p);
    const Derivative k2 = derivative(advance(s, k1, dt / 2), c, p);
    const Derivative k3 = derivative(advance(s, k2, dt / 2), c, p);
    const Derivative k4 = derivative(advance(s, k3, dt), c, p);

    const auto blend = [dt](double x, double a, double b, double cc, double d) {
        return x + dt / 6.0 * (a + 2.0 * b + 2.0 * cc + d);
    };
    const auto blend_vessel = [&](const VesselState& x, const VesselState& a, const VesselState& b, const VesselState& cc,
                                  const VesselState& d) {
        return VesselState{blend(x.x, a.x, b.x, cc.x, d.x),         blend(x.y, a.y, b.y, cc.y, d.y),
                           blend(x.theta, a.theta, b.theta, cc.theta, d.theta), blend(x.u, a.u, b.u, cc.u, d.u),
                           blend(x.v, a.v, b.v, cc.v, d.v),         blend(x.omega, a.omega, b.omega, cc.omega, d.omega)};
    };
    DuoState out;
    out.vessel1 = blend_vessel(s.vessel1, k1.v1, k2.v1, k3.v1, k4.v1);
    out.vessel2 = blend_vessel(s.vessel2, k1.v2, k2.v2, k3.v2, k4.v2);
    out.boom.links.resize(s.boom.links.size());
    for (std::size_t i = 0; i < s.boom.links.size(); ++i) {
        const Link& x = s.boom.links[i];
        const Link& a = k1.links[i];
        const Link& b = k2.links[i];
        const Link& cc = k3.links[i];
        const Link& d = k4.links[i];
        out.boom.links[i] = Link{{blend(x.p.x, a.p.x, b.p.x, cc.p.x, d.p.x), blend(x.p.y, a.p.y, b.p.y, cc.p.y, d.p.y)},
                                 blend(x.theta, a.theta, b.theta, cc.theta, d.theta),
                                 blend(x.vt, a.vt, b.vt, cc.vt, d.vt),
                                 blend(x.vn, a.vn, b.vn, cc.vn, d.vn),
                                 blend(x.omega, a.omega, b.omega, cc.omega, d.omega)};
    }
    out.t = s.t + dt;
    if (!finite(out.vessel1) || !finite(out.vessel2)) throw Error(ErrorCode::numeric, "vessel state diverged");
    update_tow_forces(out, p);
    return out;
}

double kinetic_energy(const DuoState& s, const DuoParams& p)
{
    const auto vessel = [&](const VesselState& v) {
        return 0.5 * p.vessel.m * (v.u * v.u + v.v * v.v) + 0.5 * p.vessel.I * v.omega * v.omega;
    };
    double e = vessel(s.vessel1) + vessel(s.vessel2);
    const double inertia = p.boom.inertia();
    for (const auto& l : s.boom.links) {
        e += 0.5 * p.boom.link_mass * (l.vt * l.vt + l.vn * l.vn) + 0.5 * inertia * l.omega * l.omega;
    }
    return e;
}

namespace {

template <typename F>
void for_each_gap(const DuoState& s, const DuoParams& p, F&& visit)
{
    const double ell = p.boom.link_length();
    const auto& links = s.boom.links;
    const std::size_t n = links.size();
    for (std::size_t j = 0; j <= n; ++j) {
        const Vec2 r = j == 0 ? stern_point(s.vessel1, p.vessel) : link_right(links[j - 1], ell);
        const Vec2 l = j == n ? stern_point(s.vessel2, p.vessel) : link_left(links[j], ell);
        visit(l - r);
    }
}

}  // namespace

double spring_energy(const DuoState& s, const DuoParams& p)
{
    double e = 0.0;
    for_each_gap(s, p, [&](Vec2 g) { e += 0.5 * p.boom.k_spring * dot(g, g); });
    return e;
}

double max_joint_gap(const DuoState& s, const DuoParams& p)
{
    double m = 0.0;
    for_each_gap(s, p, [&](Vec2 g) { m = std::max(m, norm(g)); });
    return m;
}

double stern_separation(const DuoState& s, const DuoParams& p)
{
    return norm(stern_point(s.vessel2, p.vessel) - stern_point(s.vessel1, p.vessel));
}

}  // namespace boomfleet
