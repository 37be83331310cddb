#include <cmath>

#include "vtolctl/analysis.hpp"
#include "vtolctl/errors.hpp"
#include "vtolctl/sim.hpp"

namespace vtolctl {

namespace {

constexpr double kDivergenceLimit = 1e9;

void check_divergence(const PlantState& state) {
    if (!state.p.is_finite() || !state.v.is_finite() || !std::isfinite(state.q.eta) ||
        !state.q.q.is_finite()) {
        throw DivergenceError("plant state became non-finite at t = " + std::to_string(state.t));
    }
    if (state.p.norm() > kDivergenceLimit || state.v.norm() > kDivergenceLimit) {
        throw DivergenceError("plant state exceeded 1e9 at t = " + std::to_string(state.t));
    }
}

LogRecord make_record(const PlantState& state, const Vec3& delta, const Measurements& meas,
                      const ControlOutput& out, const Vec3& omega_applied, const Vec3& v_hat,
                      const Diagnostics& diag) {
    LogRecord rec;
    rec.t = state.t;
    rec.p = state.p;
    rec.v = state.v;
    rec.q = state.q;
    rec.delta = delta;
    rec.p_meas = meas.p_meas;
    rec.v_meas = meas.v_meas;
    rec.b1 = meas.b1;
    rec.b2 = meas.b2;
    rec.u_t = out.u_t;
    rec.omega_cmd = out.omega;
    rec.omega_applied = omega_applied;
    rec.mu_d = out.mu_d;
    rec.q_d = out.frame.q_d;
    rec.v_hat = v_hat;
    rec.psi = out.psi;
    rec.lyapunov_v = diag.lyapunov_v;
    rec.tilde_eta = diag.tilde_q.eta;
    rec.tilde_r2 = diag.tilde_r2;
    rec.w_min_eig = diag.w_min_eig;
    return rec;
}

} // namespace

void run_into(const ScenarioConfig& config, RunLog& log) {
    validate(config);
    log.config = config;
    log.records.clear();

    const std::size_t ticks = control_ticks(config);
    const int substeps = substeps_per_tick(config.timing);
    const double g = config.plant.g;
    const Vec3 e3 = Vec3::unit_z();

    log.records.reserve(ticks + 1);

    PlantState state;
    state.p = config.initial.p0;
    state.v = config.initial.v0;
    state.q = config.initial.q0;
    state.t = 0.0;
    ControllerState ctrl = initial_controller_state(config.initial.v_hat0, g);
    SensorRng rng(config.sensors.seed);

    for (std::size_t k = 0; k < ticks; ++k) {
        // Position-loop channels first: the thrust these imply is the one in
        // force when the accelerometer is read, so b2 is sampled after it.
        const Vec3 p_meas = measure_position(state, config.sensors, rng);
        const Vec3 v_meas = measure_velocity(state, config.sensors, rng);
        const Vec3 b1 = measure_mag(state, config.sensors, rng);

        const Vec3 mu_pre = compute_mu_d(p_meas - config.p_r, v_meas, config.gains);
        const DesiredFrame frame_pre = extract(mu_pre, g);
        const Vec3 delta = aero_drag(state.v, state.q, config.plant);
        const Mat3 rot = quat_to_rot(state.q);
        const Vec3 v_dot = e3 * g - rot.transpose() * e3 * frame_pre.u_t + delta;
        const Vec3 b2 = measure_accel(state, v_dot, config.sensors, rng);

        Measurements meas{p_meas, v_meas, b1, b2, state.t};
        const StepResult res = step(meas, config.p_r, config.sensors.r1, ctrl, config.gains,
                                    config.timing.control_dt);
        const Diagnostics diag =
            compute_diagnostics(state, delta, res.output.frame, ctrl.v_hat, config.p_r,
                                config.sensors.r1, config.gains, config.lyapunov);
        const Vec3 omega_applied = corrupt_gyro(res.output.omega, config.sensors, rng);

        LogRecord rec = make_record(state, delta, meas, res.output, omega_applied, ctrl.v_hat, diag);
        rec.r2 = v_dot - e3 * g;
        log.records.push_back(rec);

        for (int i = 0; i < substeps; ++i) {
            state = rk4_step(state, res.output.u_t, omega_applied, config.plant,
                             config.timing.physics_dt);
        }
        state.t = static_cast<double>(k + 1) * config.timing.control_dt;
        ctrl = res.next;
        check_divergence(state);
    }

    // Terminal row: truth at the final time under the held (zero-order-hold)
    // controls; no controller call, no sensor draws.
    const LogRecord& last = log.records.back();
    const Vec3 delta = aero_drag(state.v, state.q, config.plant);
    DesiredFrame held;
    held.u_t = last.u_t;
    held.q_d = last.q_d;
    held.r_d = quat_to_rot(last.q_d);
    held.mu_d = last.mu_d;
    const Diagnostics diag = compute_diagnostics(state, delta, held, ctrl.v_hat, config.p_r,
                                                 config.sensors.r1, config.gains, config.lyapunov);
    LogRecord rec = last;
    rec.t = state.t;
    rec.p = state.p;
    rec.v = state.v;
    rec.q = state.q;
    rec.delta = delta;
    rec.r2 = quat_to_rot(state.q).transpose() * e3 * (-last.u_t) + delta;
    rec.v_hat = ctrl.v_hat;
    rec.lyapunov_v = diag.lyapunov_v;
    rec.tilde_eta = diag.tilde_q.eta;
    rec.tilde_r2 = diag.tilde_r2;
    rec.w_min_eig = diag.w_min_eig;
    log.records.push_back(rec);
}

RunLog run(const ScenarioConfig& config) {
    RunLog log;
    run_into(config, log);
    return log;
}

} // namespace vtolctl
