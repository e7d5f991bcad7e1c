#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "boomfleet/dynamics.hpp"
#include "boomfleet/geometry.hpp"

namespace boomfleet {

// ---------------------------------------------------------------- PID

struct PidGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
    double tau = 0.1;  // derivative filter time constant, s
};

/// One discrete PID channel: trapezoidal integral, Tustin-filtered
/// derivative, output clamped to [lower, upper] with conditional integration
/// and an integral term bounded by the same interval. lower == upper == 0
/// means unlimited.
class PidChannel {
public:
    PidChannel() = default;
    PidChannel(PidGains gains, double limit);
    PidChannel(PidGains gains, double lower, double upper);

    double step(double error, double dt);
    void reset();
    double integral_term() const { return integral_; }

private:
    PidGains g_;
    double lower_ = 0.0;
    double upper_ = 0.0;
    double integral_ = 0.0;
    double derivative_ = 0.0;
    double prev_error_ = 0.0;
};

struct PidVesselGains {
    PidGains surge{2000.0, 200.0, 0.0, 0.1};
    PidGains heading{2.0, 0.05, 2.5, 0.2};
};

/// Surge error u_ref - u drives F in [0, F_max]; wrapped heading error drives eta.
struct PidOutput {
    double F = 0.0;
    double eta = 0.0;
};
PidOutput pid_step(PidChannel& surge, PidChannel& heading, double e_u, double e_theta, double dt);

// ---------------------------------------------------------- lead loops

enum class LeadTopology { normalized, standard };

/// First-order section (b1 s + b0) / (s + a0) discretized with Tustin.
class TustinFirstOrder {
public:
    TustinFirstOrder() = default;
    TustinFirstOrder(double b1, double b0, double a0) : b1_(b1), b0_(b0), a0_(a0) {}

    double step(double x, double dt);
    /// Sets the internal state to the steady state for a constant input x.
    void settle(double x);
    double dc_gain() const { return b0_ / a0_; }

private:
    double b1_ = 0.0;
    double b0_ = 1.0;
    double a0_ = 1.0;
    double x_prev_ = 0.0;
    double y_prev_ = 0.0;
};

struct LeadParams {
    double K = 1.0;       // static loop gain
    double beta = 1.0;    // lead ratio
    double Omega = 1.0;   // crossover, rad/s
    double tau_ref = 0.0; // reference low-pass, s; 0 disables it
    LeadTopology topology = LeadTopology::normalized;
};

/// Normalized: alpha = (K / sqrt(beta)) (r_f - H[y]) with the unity-DC lead
/// H(s) = (beta s + sqrt(beta) Omega) / (s + sqrt(beta) Omega) in feedback.
/// Standard: alpha = (K / sqrt(beta)) H[r_f - y].
class LeadLoop {
public:
    LeadLoop() = default;
    explicit LeadLoop(const LeadParams& p);

    double step(double reference, double measurement, double dt);
    void reset();

private:
    LeadParams p_;
    TustinFirstOrder lead_;
    TustinFirstOrder ref_filter_;
    bool started_ = false;
};

// ------------------------------------------------ feedback linearization

struct FblGains {
    double Omega_u = 0.8;
    double beta_u = 2.0396;   // 20 degree phase margin
    double Omega_w = 1.2;
    double beta_w = 13.9282;  // 60 degree phase margin
    double tau_ref = 0.0;
    LeadTopology topology = LeadTopology::normalized;
    bool tension_feedforward = true;
};

double gamma_u(const VesselParams& p);
double gamma_w(const VesselParams& p);
/// Loop gains placing the crossover at Omega: K_u = Omega_u / gamma_u and
/// K_w = Omega_w^2 / gamma_w.
double surge_gain(const FblGains& g, const VesselParams& p);
double yaw_gain(const FblGains& g, const VesselParams& p);

/// beta = (1 + sin phi) / (1 - sin phi); Error(domain) unless 0 <= phi < pi/2.
double beta_from_phase_margin(double phi);

struct Disturbance {
    double d_u = 0.0;
    double d_w = 0.0;
};
Disturbance fbl_disturbance_terms(const VesselState& s, Vec2 f_l_body, const VesselParams& p);

/// F = |(a, b)| and eta = atan2(b, a) for a = alpha_u + d_u, b = alpha_w + d_w.
/// a is projected to a >= 0 so that F >= 0 and |eta| <= pi/2; F = 0 gives eta = 0.
PidOutput reconstruct_thrust(double a, double b);

/// Saturating allocation: the steering component b is kept (up to F_max) and
/// the surge component a >= 0 is shortened so that |(a, b)| <= F_max.
PidOutput allocate_thrust(double a, double b, double F_max);

class FblVesselController {
public:
    FblVesselController() = default;
    FblVesselController(const FblGains& g, const VesselParams& p);

    /// Returns clamped (F, eta). theta_ref may jump by 2 pi; it is unwrapped
    /// against the previous reference.
    PidOutput step(double u_ref, double theta_ref, const VesselState& s, Vec2 f_l_body, double dt);

private:
    FblGains g_;
    VesselParams p_;
    LeadLoop surge_;
    LeadLoop yaw_;
    bool started_ = false;
    double theta_ref_ = 0.0;
};

class PidVesselController {
public:
    PidVesselController() = default;
    PidVesselController(const PidVesselGains& g, const VesselParams& p);

    PidOutput step(double u_ref, double theta_ref, const VesselState& s, double dt);

private:
    PidChannel surge_;
    PidChannel heading_;
};

// ----------------------------------------------------------- stability

struct LoopVerdict {
    bool stable = false;
    std::string violated;  // empty when stable
};

struct StabilityReport {
    LoopVerdict surge;
    LoopVerdict yaw;
    bool stable() const { return surge.stable && yaw.stable; }
};

/// Routh-Hurwitz on s^2 + 2 sqrt(beta_u) Omega_u s + Omega_u^2 and
/// s^3 + sqrt(beta_w) Omega_w s^2 + sqrt(beta_w) Omega_w^2 s + Omega_w^3.
StabilityReport stability_check(const FblGains& g);

/// Monic characteristic polynomials, highest power first.
std::vector<double> surge_characteristic(const FblGains& g);
std::vector<double> yaw_characteristic(const FblGains& g);

// ------------------------------------------------------- setpoint plans

/// A path parameterized by arc length.
class PathCurve {
public:
    virtual ~PathCurve() = default;
    virtual double length() const = 0;
    virtual Pose at(double s) const = 0;
};

class PolylinePath : public PathCurve {
public:
    explicit PolylinePath(std::vector<Vec2> points);
    double length() const override { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
    /// Heading is the segment direction; at an interior vertex it is the
    /// bisector of the two adjoining segments.
    Pose at(double s) const override;
    const std::vector<Vec2>& points() const { return pts_; }

private:
    std::vector<Vec2> pts_;
    std::vector<double> cumulative_;
};

struct Setpoint {
    Vec2 p;
    double heading = 0.0;
    double speed = -1.0;  // cruise speed toward this setpoint; negative uses the plan default
    double dwell = 0.0;   // hold time once both vessels arrive, s
};

struct SetpointPlan {
    std::vector<Setpoint> left;   // vessel 1
    std::vector<Setpoint> right;  // vessel 2
    double u_cruise = 1.0;
    double arrival_radius = 2.0;
    double lateral_offset = 20.0;
};

struct PlanOptions {
    double spacing = 10.0;
    double lateral_offset = 20.0;
    double arrival_radius = 2.0;
    double u_cruise = 1.0;
};

/// Samples the path at s = 0, spacing, 2 spacing, ..., length and offsets
/// each sample by +-lateral_offset/2 along the left normal. Throws
/// Error(config) when lateral_offset >= boom_length or the path is empty.
SetpointPlan path_to_setpoints(const PathCurve& path, const PlanOptions& options, double boom_length);

/// Appends the samples of `path` to `plan` (skipping s = 0 when the plan is
/// non-empty) with the given speed and a dwell on the last sample. A
/// negative lateral_offset uses plan.lateral_offset.
void append_path(SetpointPlan& plan, const PathCurve& path, double spacing, double speed, double final_dwell,
                 double boom_length, double lateral_offset = -1.0);

enum class SupervisorMode { cruise, dwell, done };

struct SupervisorState {
    int index = 0;  // shared target index
    bool arrived1 = false;
    bool arrived2 = false;
    SupervisorMode mode = SupervisorMode::cruise;
    double dwell_left = 0.0;
};

struct References {
    double u_ref1 = 0.0;
    double theta_ref1 = 0.0;
    double u_ref2 = 0.0;
    double theta_ref2 = 0.0;
};

/// Hold-and-align: a vessel that reaches its current setpoint (inside the
/// arrival radius or past the setpoint's normal line) holds with u_ref = 0
/// until its partner reaches the same index; then both advance. A cruising
/// vessel steers along the line of sight to its setpoint; a holding one
/// aligns with the setpoint heading.
References supervisor_step(const SetpointPlan& plan, SupervisorState& sup, const Pose& pose1, const Pose& pose2,
                           double dt);

// ---------------------------------------------------- duo controllers

enum class ControllerType { pid, fbl };

struct ControllerConfig {
    ControllerType type = ControllerType::fbl;
    PidVesselGains pid;
    FblGains fbl;
    double control_dt = 0.01;
};

std::string controller_to_json(const ControllerConfig& c);
ControllerConfig controller_from_json(const std::string& text);
std::string to_string(ControllerType t);

class DuoController {
public:
    DuoController(const ControllerConfig& config, const VesselParams& vessel);

    Controls compute(const DuoState& s, const References& refs, double dt);

private:
    ControllerConfig config_;
    std::array<FblVesselController, 2> fbl_;
    std::array<PidVesselController, 2> pid_;
};

}  // namespace boomfleet
