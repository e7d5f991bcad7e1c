#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "boomfleet/geometry.hpp"

namespace boomfleet {

struct VesselParams {
    double m = 600.0;          // kg
    double I = 500.0;          // kg m^2
    double r = 2.0;            // propulsor offset behind the CoM, m
    double kappa_l = 100.0;    // surge drag, N s^2/m^2
    double kappa_t = 10000.0;  // sway drag, N s^2/m^2
    double kappa_w = 1000.0;   // yaw drag, N m s^2/rad^2
    double F_max = 5000.0;     // N
    double eta_max = std::numbers::pi / 2;

    void validate() const;
};

struct VesselState {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;  // unwrapped
    double u = 0.0;      // surge, body frame
    double v = 0.0;      // sway, body frame
    double omega = 0.0;

    Vec2 position() const { return {x, y}; }
    Vec2 e_u() const { return unit_from_angle(theta); }
    Vec2 e_v() const { return left_normal(theta); }
    Vec2 world_velocity() const { return u * e_u() + v * e_v(); }
};

/// Time derivative (x', y', theta', u', v', omega') of one vessel under
/// thrust F at steering angle eta and tow force f_l given in the body frame.
VesselState vessel_derivative(const VesselState& s, double F, double eta, Vec2 f_l_body, const VesselParams& p);

/// Tow point at the stern, r behind the CoM, and its world velocity.
Vec2 stern_point(const VesselState& s, const VesselParams& p);
Vec2 stern_velocity(const VesselState& s, const VesselParams& p);

struct BoomParams {
    int n_links = 40;
    double total_length = 40.0;   // m
    double link_mass = 25.0;      // kg
    double link_inertia = -1.0;   // kg m^2; negative means uniform rod m l^2 / 12
    double k_spring = 1.0e4;      // N/m
    double c_damper = 5.0e2;      // N s/m
    double kappa_t_link = 5.0;    // along the link
    double kappa_l_link = 500.0;  // across the link
    double kappa_w_link = 50.0;

    double link_length() const { return total_length / n_links; }
    double inertia() const;
    void validate() const;
};

struct Link {
    Vec2 p;             // centre of mass
    double theta = 0.0;
    double vt = 0.0;    // along t = (cos theta, sin theta)
    double vn = 0.0;    // along n = (-sin theta, cos theta)
    double omega = 0.0;

    Vec2 t_hat() const { return unit_from_angle(theta); }
    Vec2 n_hat() const { return left_normal(theta); }
    Vec2 velocity() const { return vt * t_hat() + vn * n_hat(); }
};

struct BoomState {
    std::vector<Link> links;
};

/// Left end N = p - (l/2) t and right end M = p + (l/2) t, with velocities.
Vec2 link_left(const Link& link, double ell);
Vec2 link_right(const Link& link, double ell);
Vec2 link_left_velocity(const Link& link, double ell);
Vec2 link_right_velocity(const Link& link, double ell);

/// A point of attachment with its world velocity.
struct Anchor {
    Vec2 p;
    Vec2 v;
};

/// joint[j] (j = 0..n) joins the right end of body j to the left end of
/// body j+1, where body 0 is vessel 1's stern and body n+1 is vessel 2's
/// stern. joint[j] acts on body j; body j+1 receives its negation.
struct JointForces {
    std::vector<Vec2> joint;

    Vec2 on_left(int link) const { return -joint[link]; }      // F_{i,0} on link i (0-based)
    Vec2 on_right(int link) const { return joint[link + 1]; }  // F_{i,1}
    Vec2 on_vessel1() const { return joint.front(); }
    Vec2 on_vessel2() const { return -joint.back(); }
};

/// Spring-damper joint forces k * gap + c * ((relative velocity) . e) e with
/// e the unit gap direction. A gap below 1e-9 m produces no force.
Vec2 joint_force(Vec2 right_end, Vec2 right_vel, Vec2 left_end, Vec2 left_vel, double k, double c);
JointForces boom_joint_forces(const BoomState& boom, Anchor stern1, Anchor stern2, const BoomParams& p);

/// Derivative of every link: (p', theta', vt', vn', omega') packed in a Link.
std::vector<Link> boom_derivative(const BoomState& boom, const JointForces& forces, const BoomParams& p);

struct DuoState {
    VesselState vessel1;
    VesselState vessel2;
    BoomState boom;
    Vec2 f_l1;  // tow force on vessel 1, body frame
    Vec2 f_l2;
    double t = 0.0;
};

struct DuoParams {
    VesselParams vessel;
    BoomParams boom;
    double dt = 1.0e-3;

    /// Largest stable step for the joint springs.
    double dt_cap() const;
    void validate() const;
};

struct Controls {
    double F1 = 0.0;
    double eta1 = 0.0;
    double F2 = 0.0;
    double eta2 = 0.0;
};

/// Controls clamped to |F| <= F_max and |eta| <= eta_max.
Controls clamp_controls(const Controls& c, const VesselParams& p);

/// Lays the boom between the two sterns: a straight line when they are at
/// least L apart, otherwise a circular-arc polygon of length L bowing away
/// from the vessels' mean heading. Links start at rest; tow forces are set.
DuoState make_duo(const VesselState& v1, const VesselState& v2, const DuoParams& p);

/// One RK4 step with zero-order-hold controls. Throws Error(config) for a
/// step outside (0, dt_cap] and Error(numeric) on non-finite state.
DuoState step(const DuoState& s, const Controls& controls, double dt, const DuoParams& p);

/// Recomputes the tow forces on both vessels from the current state.
void update_tow_forces(DuoState& s, const DuoParams& p);

double kinetic_energy(const DuoState& s, const DuoParams& p);
double spring_energy(const DuoState& s, const DuoParams& p);

/// Largest joint gap and the stern-to-stern distance.
double max_joint_gap(const DuoState& s, const DuoParams& p);
double stern_separation(const DuoState& s, const DuoParams& p);

}  // namespace boomfleet
