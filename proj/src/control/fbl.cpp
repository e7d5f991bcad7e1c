#include <algorithm>
#include <cmath>

#include "boomfleet/control.hpp"
#include "boomfleet/error.hpp"

namespace boomfleet {

double TustinFirstOrder::step(double x, double dt)
{
    const double c = 2.0 / dt;
    const double y = ((b1_ * c + b0_) * x + (b0_ - b1_ * c) * x_prev_ - (a0_ - c) * y_prev_) / (c + a0_);
    x_prev_ = x;
    y_prev_ = y;
    return y;
}

void TustinFirstOrder::settle(double x)
{
    x_prev_ = x;
    y_prev_ = dc_gain() * x;
}

LeadLoop::LeadLoop(const LeadParams& p) : p_(p)
{
    const double sb = std::sqrt(p.beta);
    lead_ = TustinFirstOrder(p.beta, sb * p.Omega, sb * p.Omega);
    if (p.tau_ref > 0.0) ref_filter_ = TustinFirstOrder(0.0, 1.0 / p.tau_ref, 1.0 / p.tau_ref);
}

void LeadLoop::reset() { started_ = false; }

double LeadLoop::step(double reference, double y, double dt)
{
    if (!started_) {
        // filters start at rest around the current measurement
        ref_filter_.settle(y);
        lead_.settle(p_.topology == LeadTopology::normalized ? y : 0.0);
        started_ = true;
    }
    const double rf = p_.tau_ref > 0.0 ? ref_filter_.step(reference, dt) : reference;
    const double gain = p_.K / std::sqrt(p_.beta);
    if (p_.topology == LeadTopology::normalized) return gain * (rf - lead_.step(y, dt));
    return gain * lead_.step(rf - y, dt);
}

double gamma_u(const VesselParams& p) { return 1.0 / p.m; }
double gamma_w(const VesselParams& p) { return p.r / p.I; }
double surge_gain(const FblGains& g, const VesselParams& p) { return g.Omega_u / gamma_u(p); }
double yaw_gain(const FblGains& g, const VesselParams& p) { return g.Omega_w * g.Omega_w / gamma_w(p); }

double beta_from_phase_margin(double phi)
{
    if (!(phi >= 0.0) || phi >= std::numbers::pi / 2) {
        throw Error(ErrorCode::domain, "phase margin must lie in [0, pi/2)");
    }
    const double s = std::sin(phi);
    return (1.0 + s) / (1.0 - s);
}

Disturbance fbl_disturbance_terms(const VesselState& s, Vec2 f_l, const VesselParams& p)
{
    return {-f_l.x + p.kappa_l * std::abs(s.u) * s.u - p.m * s.omega * s.v,
            f_l.y + p.kappa_w * std::abs(s.omega) * s.omega / p.r};
}

PidOutput reconstruct_thrust(double a, double b)
{
    a = std::max(a, 0.0);
    const double F = std::hypot(a, b);
    if (F == 0.0) return {0.0, 0.0};
    return {F, std::atan2(b / F, a / F)};
}

PidOutput allocate_thrust(double a, double b, double F_max)
{
    b = std::clamp(b, -F_max, F_max);
    a = std::min(std::max(a, 0.0), std::sqrt(F_max * F_max - b * b));
    return reconstruct_thrust(a, b);
}

FblVesselController::FblVesselController(const FblGains& g, const VesselParams& p) : g_(g), p_(p)
{
    surge_ = LeadLoop({surge_gain(g, p), g.beta_u, g.Omega_u, g.tau_ref, g.topology});
    yaw_ = LeadLoop({yaw_gain(g, p), g.beta_w, g.Omega_w, g.tau_ref, g.topology});
}

PidOutput FblVesselController::step(double u_ref, double theta_ref, const VesselState& s, Vec2 f_l, double dt)
{
    if (!started_) {
        theta_ref_ = s.theta + wrap_angle(theta_ref - s.theta);
        started_ = true;
    } else {
        theta_ref_ += wrap_angle(theta_ref - theta_ref_);
    }
    const double alpha_u = surge_.step(u_ref, s.u, dt);
    const double alpha_w = yaw_.step(theta_ref_, s.theta, dt);
    const Disturbance d = fbl_disturbance_terms(s, g_.tension_feedforward ? f_l : Vec2{0.0, 0.0}, p_);
    const PidOutput out = allocate_thrust(alpha_u + d.d_u, alpha_w + d.d_w, p_.F_max);
    return {out.F, std::clamp(out.eta, -p_.eta_max, p_.eta_max)};
}

std::vector<double> surge_characteristic(const FblGains& g)
{
    const double sb = std::sqrt(g.beta_u);
    return {1.0, 2.0 * sb * g.Omega_u, g.Omega_u * g.Omega_u};
}

std::vector<double> yaw_characteristic(const FblGains& g)
{
    const double sb = std::sqrt(g.beta_w);
    const double w = g.Omega_w;
    return {1.0, sb * w, sb * w * w, w * w * w};
}

StabilityReport stability_check(const FblGains& g)
{
    StabilityReport r;
    if (!(g.beta_u > 0.0)) {
        r.surge.violated = "beta_u > 0";
    } else {
        const auto c = surge_characteristic(g);
        if (!(c[1] > 0.0)) r.surge.violated = "a1 = 2 sqrt(beta_u) Omega_u > 0";
        else if (!(c[2] > 0.0)) r.surge.violated = "a0 = Omega_u^2 > 0";
        else r.surge.stable = true;
    }
    if (!(g.beta_w > 0.0)) {
        r.yaw.violated = "beta_w > 0";
    } else {
        const auto c = yaw_characteristic(g);
        if (!(c[1] > 0.0)) r.yaw.violated = "a2 = sqrt(beta_w) Omega_w > 0";
        else if (!(c[2] > 0.0)) r.yaw.violated = "a1 = sqrt(beta_w) Omega_w^2 > 0";
        else if (!(c[3] > 0.0)) r.yaw.violated = "a0 = Omega_w^3 > 0";
        else if (!(g.beta_w > 1.0)) r.yaw.violated = "a2 a1 > a0 (beta_w > 1)";
        else r.yaw.stable = true;
    }
    return r;
}

}  // namespace boomfleet
