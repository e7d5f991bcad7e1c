#pragma once

#include <array>
#include <string>
#include <vector>

#include "boomfleet/control.hpp"
#include "boomfleet/dubins.hpp"
#include "boomfleet/dynamics.hpp"

namespace boomfleet {

/// Signed distance (left of the path direction is positive) and heading
/// error against a dense reference polyline, with a moving search window.
class CrossTrack {
public:
    explicit CrossTrack(std::vector<Vec2> reference, double window = 30.0);

    struct Sample {
        double cross_track = 0.0;  // m
        double heading_error = 0.0;  // rad, wrapped
    };
    Sample measure(const Pose& pose);

private:
    std::vector<Vec2> ref_;
    std::vector<double> s_;
    double window_;
    std::size_t cursor_ = 0;
};

struct LogRow {
    double t = 0.0;
    std::array<VesselState, 2> vessel;
    Controls controls;
    std::array<Vec2, 2> tow;  // body frame
    Vec2 boom_mid;            // centre of the middle link
    double separation = 0.0;
    std::array<double, 2> cross_track{0.0, 0.0};
    std::array<double, 2> heading_error{0.0, 0.0};  // deg
};

/// Trajectory CSV: one row per log sample.
std::string trajectory_csv(const std::vector<LogRow>& log);
/// Error CSV: t, cross_track_1, heading_err_1, cross_track_2, heading_err_2, u_1, u_2.
std::string error_csv(const std::vector<LogRow>& log);

struct SimulationOptions {
    DuoParams duo;
    ControllerConfig controller;
    double duration_cap = 600.0;  // s
    double log_interval = 0.05;   // s
};

struct TrackingExperiment {
    Pose start{0.0, 0.0, 0.0};
    Pose goal{100.0, 65.0, std::numbers::pi};
    double rho = 15.0;
    double v_ref = 5.0;
    PlanOptions plan{10.0, 20.0, 2.0, 5.0};
    /// Initial distance between the vessels; the default puts each on its own offset path.
    double start_separation = 20.0;
    /// Spacing of the dense reference used for error measurement.
    double reference_step = 0.1;
};

struct VesselMetrics {
    double cross_track_rmse = 0.0;  // m
    double heading_rmse = 0.0;      // deg
};

struct TrackingResult {
    std::array<VesselMetrics, 2> vessel;
    bool complete = false;
    double finish_time = 0.0;
    double max_separation = 0.0;
    double max_joint_gap = 0.0;
    std::string word;
    std::vector<LogRow> log;
};

/// Builds the Dubins reference, converts it to setpoints, and simulates the
/// duo until the supervisor finishes or the duration cap is hit.
TrackingResult run_tracking_experiment(const TrackingExperiment& exp, const SimulationOptions& sim);

/// Result of a closed-loop run of a setpoint plan from a given duo state.
struct PlanRun {
    DuoState final_state;
    bool complete = false;
    double finish_time = 0.0;
    double max_separation = 0.0;
    double max_joint_gap = 0.0;
    std::vector<LogRow> log;
    /// Time at which the supervisor released each plan index (both vessels
    /// arrived and any dwell elapsed); negative if never.
    std::vector<double> released;
};

/// `errors` measures vessel 1 / vessel 2 against their references when non-null.
PlanRun run_plan(const SetpointPlan& plan, const DuoState& start, const SimulationOptions& sim,
                 std::array<CrossTrack*, 2> errors = {nullptr, nullptr});

struct SweepSpec {
    std::vector<double> rho;
    std::vector<double> v_ref;
    TrackingExperiment base;
};

struct SweepCell {
    double rho = 0.0;
    double v_ref = 0.0;
    TrackingResult result;  // log dropped
};

struct RmseMap {
    ControllerType controller = ControllerType::fbl;
    std::vector<double> rho;
    std::vector<double> v_ref;
    std::vector<SweepCell> cells;  // row-major: rho index * v count + v index

    const SweepCell& at(std::size_t i_rho, std::size_t i_v) const { return cells[i_rho * v_ref.size() + i_v]; }
    bool all_complete() const;
};

/// Cells run in parallel; the map is identical to run_rmse_sweep_serial.
RmseMap run_rmse_sweep(const SweepSpec& spec, const SimulationOptions& sim);
RmseMap run_rmse_sweep_serial(const SweepSpec& spec, const SimulationOptions& sim);

/// Long-form CSV: controller, rho, v_ref, complete, then per-vessel RMSEs.
std::string rmse_csv(const std::vector<RmseMap>& maps);

/// Evenly spaced values lo..hi inclusive.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace boomfleet
