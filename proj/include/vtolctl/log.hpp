#pragma once

#include <cstddef>
#include <vector>

#include "vtolctl/analysis.hpp"
#include "vtolctl/controller.hpp"
#include "vtolctl/plant.hpp"
#include "vtolctl/sensors.hpp"

namespace vtolctl {

struct Timing {
    double t_end = 60.0;
    double physics_dt = 1e-3;
    double control_dt = 5e-3; // must be an integer multiple of physics_dt
};

struct InitialState {
    Vec3 p0 = {150.0, 50.0, 0.0};
    Vec3 v0{};
    UnitQuaternion q0{};
    Vec3 v_hat0{};
};

// A fully resolved scenario. Gravity is a single scenario-wide value copied
// into the plant, gain, and sensor parameter blocks at config ingestion.
struct ScenarioConfig {
    PlantParams plant{};
    SensorParams sensors{};
    ControlGains gains{};
    LyapunovWeights lyapunov{};
    InitialState initial{};
    Vec3 p_r{};
    Timing timing{};
};

// One row per controller tick plus a terminal row. Truth, measured, control,
// controller-internal and diagnostic channels live in disjoint groups so the
// output-feedback property stays auditable.
struct LogRecord {
    double t = 0.0;
    // plant truth
    Vec3 p{}, v{};
    UnitQuaternion q{};
    Vec3 delta{}, r2{};
    // measurements
    Vec3 p_meas{}, v_meas{}, b1{}, b2{};
    // controls
    double u_t = 0.0;
    Vec3 omega_cmd{}, omega_applied{};
    // controller internals
    Vec3 mu_d{};
    UnitQuaternion q_d{};
    Vec3 v_hat{}, psi{};
    // diagnostics
    double lyapunov_v = 0.0;
    double tilde_eta = 0.0;
    Vec3 tilde_r2{};
    double w_min_eig = 0.0;
};

struct RunLog {
    ScenarioConfig config{};
    std::vector<LogRecord> records{};
};

// Number of controller invocations: ceil(t_end / control_dt).
std::size_t control_ticks(const ScenarioConfig& config);

// Rows a complete log must carry (ticks plus the terminal row).
std::size_t expected_rows(const ScenarioConfig& config);

// Physics substeps per controller tick; throws ValidationError when
// control_dt is not an integer multiple of physics_dt.
int substeps_per_tick(const Timing& timing);

// True when wind, every noise std and the gyro bias are all zero: the only
// regime in which the monotone-V contract is asserted.
bool disturbance_free(const ScenarioConfig& config);

} // namespace vtolctl
