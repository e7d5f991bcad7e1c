#include <algorithm>
#include <cmath>

#include "boomfleet/control.hpp"

namespace boomfleet {

PidChannel::PidChannel(PidGains gains, double limit) : g_(gains), lower_(-limit), upper_(limit) {}

PidChannel::PidChannel(PidGains gains, double lower, double upper) : g_(gains), lower_(lower), upper_(upper) {}

void PidChannel::reset()
{
    integral_ = 0.0;
    derivative_ = 0.0;
    prev_error_ = 0.0;
}

double PidChannel::step(double e, double dt)
{
    const double p = g_.kp * e;
    double integral = integral_ + g_.ki * dt * 0.5 * (e + prev_error_);
    const double a = (2.0 * g_.tau - dt) / (2.0 * g_.tau + dt);
    derivative_ = a * derivative_ + (2.0 * g_.kd / (2.0 * g_.tau + dt)) * (e - prev_error_);
    prev_error_ = e;

    const bool limited = lower_ < upper_;
    const double unsat = p + integral + derivative_;
    if (limited && ((unsat > upper_ && e > 0.0) || (unsat < lower_ && e < 0.0))) integral = integral_;
    if (limited) integral = std::clamp(integral, lower_, upper_);
    integral_ = integral;

    const double out = p + integral_ + derivative_;
    return limited ? std::clamp(out, lower_, upper_) : out;
}

PidOutput pid_step(PidChannel& surge, PidChannel& heading, double e_u, double e_theta, double dt)
{
    return {surge.step(e_u, dt), heading.step(wrap_angle(e_theta), dt)};
}

PidVesselController::PidVesselController(const PidVesselGains& g, const VesselParams& p)
    : surge_(g.surge, 0.0, p.F_max), heading_(g.heading, p.eta_max)
{
}

PidOutput PidVesselController::step(double u_ref, double theta_ref, const VesselState& s, double dt)
{
    return pid_step(surge_, heading_, u_ref - s.u, theta_ref - s.theta, dt);
}

}  // namespace boomfleet
