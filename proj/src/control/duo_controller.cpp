#include <json.hpp>

#include "boomfleet/control.hpp"
#include "boomfleet/error.hpp"

namespace boomfleet {

using nlohmann::json;

std::string to_string(ControllerType t) { return t == ControllerType::pid ? "pid" : "fbl"; }

namespace {

json pid_json(const PidGains& g) { return {{"kp", g.kp}, {"ki", g.ki}, {"kd", g.kd}, {"tau", g.tau}}; }

PidGains pid_from(const json& j, PidGains g)
{
    g.kp = j.value("kp", g.kp);
    g.ki = j.value("ki", g.ki);
    g.kd = j.value("kd", g.kd);
    g.tau = j.value("tau", g.tau);
    if (!(g.tau > 0.0)) throw Error(ErrorCode::config, "PID derivative filter tau must be positive");
    return g;
}

}  // namespace

std::string controller_to_json(const ControllerConfig& c)
{
    json j;
    j["type"] = to_string(c.type);
    j["control_dt"] = c.control_dt;
    j["pid"] = {{"surge", pid_json(c.pid.surge)}, {"heading", pid_json(c.pid.heading)}};
    j["fbl"] = {{"Omega_u", c.fbl.Omega_u},
                {"beta_u", c.fbl.beta_u},
                {"Omega_w", c.fbl.Omega_w},
                {"beta_w", c.fbl.beta_w},
                {"tau_ref", c.fbl.tau_ref},
                {"topology", c.fbl.topology == LeadTopology::normalized ? "normalized" : "standard"},
                {"tension_feedforward", c.fbl.tension_feedforward}};
    return j.dump(2) + "\n";
}

ControllerConfig controller_from_json(const std::string& text)
{
    ControllerConfig c;
    try {
        const json j = json::parse(text);
        const std::string type = j.value("type", std::string("fbl"));
        if (type == "pid") c.type = ControllerType::pid;
        else if (type == "fbl") c.type = ControllerType::fbl;
        else throw Error(ErrorCode::config, "controller type must be \"pid\" or \"fbl\"");
        c.control_dt = j.value("control_dt", c.control_dt);
        if (j.contains("pid")) {
            const json& p = j["pid"];
            if (p.contains("surge")) c.pid.surge = pid_from(p["surge"], c.pid.surge);
            if (p.contains("heading")) c.pid.heading = pid_from(p["heading"], c.pid.heading);
        }
        if (j.contains("fbl")) {
            const json& f = j["fbl"];
            c.fbl.Omega_u = f.value("Omega_u", c.fbl.Omega_u);
            c.fbl.beta_u = f.value("beta_u", c.fbl.beta_u);
            c.fbl.Omega_w = f.value("Omega_w", c.fbl.Omega_w);
            c.fbl.beta_w = f.value("beta_w", c.fbl.beta_w);
            c.fbl.tau_ref = f.value("tau_ref", c.fbl.tau_ref);
            const std::string topo = f.value("topology", std::string("normalized"));
            if (topo == "normalized") c.fbl.topology = LeadTopology::normalized;
            else if (topo == "standard") c.fbl.topology = LeadTopology::standard;
            else throw Error(ErrorCode::config, "lead topology must be \"normalized\" or \"standard\"");
            c.fbl.tension_feedforward = f.value("tension_feedforward", c.fbl.tension_feedforward);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::config, std::string("malformed controller JSON: ") + e.what());
    }
    if (!(c.control_dt > 0.0)) throw Error(ErrorCode::config, "control_dt must be positive");
    if (!(c.fbl.Omega_u > 0.0) || !(c.fbl.Omega_w > 0.0) || !(c.fbl.beta_u > 0.0) || !(c.fbl.beta_w > 1.0)) {
        throw Error(ErrorCode::config, "FBL gains need Omega_u, Omega_w > 0, beta_u > 0 and beta_w > 1");
    }
    return c;
}

DuoController::DuoController(const ControllerConfig& config, const VesselParams& vessel) : config_(config)
{
    for (int i = 0; i < 2; ++i) {
        fbl_[i] = FblVesselController(config.fbl, vessel);
        pid_[i] = PidVesselController(config.pid, vessel);
    }
}

Controls DuoController::compute(const DuoState& s, const References& r, double dt)
{
    PidOutput a;
    PidOutput b;
    if (config_.type == ControllerType::fbl) {
        a = fbl_[0].step(r.u_ref1, r.theta_ref1, s.vessel1, s.f_l1, dt);
        b = fbl_[1].step(r.u_ref2, r.theta_ref2, s.vessel2, s.f_l2, dt);
    } else {
        a = pid_[0].step(r.u_ref1, r.theta_ref1, s.vessel1, dt);
        b = pid_[1].step(r.u_ref2, r.theta_ref2, s.vessel2, dt);
    }
    return {a.F, a.eta, b.F, b.eta};
}

}  // namespace boomfleet
