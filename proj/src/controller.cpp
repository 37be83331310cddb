#include "vtolctl/controller.hpp"

#include "vtolctl/errors.hpp"

namespace vtolctl {

void validate(const ControlGains& gains) {
    if (!(gains.k_p > 0.0 && gains.k_v > 0.0 && gains.k_1 > 0.0 && gains.gamma_1 > 0.0 &&
          gains.gamma_2 > 0.0 && gains.g > 0.0)) {
        throw ValidationError("gains: all gains must be positive");
    }
    if (!(gains.k_p + gains.k_v < gains.g)) {
        throw ValidationError("gains: k_p + k_v must be smaller than g");
    }
}

ControllerState initial_controller_state(const Vec3& v_hat0, double g) {
    ControllerState s;
    s.v_hat = v_hat0;
    s.last_frame.u_t = g;
    s.last_frame.q_d = UnitQuaternion::identity();
    s.last_frame.r_d = Mat3::identity();
    s.last_frame.mu_d = Vec3::zero();
    s.last_omega_cmd = Vec3::zero();
    return s;
}

Vec3 compute_mu_d(const Vec3& e_p, const Vec3& v, const ControlGains& gains) {
    return -gains.k_p * sat_h(e_p) - gains.k_v * sat_h(v);
}

Vec3 compute_psi(const DesiredFrame& frame, const Vec3& b1, const Vec3& b2, const Vec3& v,
                 const Vec3& v_hat, const Vec3& r1, const ControlGains& gains) {
    const Vec3 mag_term = cross(frame.r_d * r1, b1);
    const Vec3 acc_term = cross(frame.r_d * (v - v_hat), b2);
    return gains.gamma_1 * mag_term + gains.gamma_2 * gains.k_1 * acc_term;
}

StepResult step(const Measurements& meas, const Vec3& p_r, const Vec3& r1,
                const ControllerState& state, const ControlGains& gains, double dt) {
    if (!meas.is_finite()) {
        throw NonFiniteError("controller step: non-finite measurement");
    }
    const Vec3 e3 = Vec3::unit_z();
    const Vec3 e_p = meas.p_meas - p_r;
    const Vec3 v = meas.v_meas;

    const Vec3 mu_d = compute_mu_d(e_p, v, gains);
    const DesiredFrame frame = extract(mu_d, gains.g);
    const Mat3 rd_t = frame.r_d.transpose();

    // Feedforward part of the desired-acceleration rate.
    const Vec3 f_mu_d = -gains.k_p * (sat_phi(e_p) * v) +
                        gains.k_v * (sat_phi(v) * (gains.k_p * sat_h(e_p) + gains.k_v * sat_h(v)));

    const Vec3 psi = compute_psi(frame, meas.b1, meas.b2, v, state.v_hat, r1, gains);

    // b2 + u_t e3 isolates the measured drag; its weight mirrors the h(v)
    // term of mu_d.
    const Vec3 drag_meas = rd_t * (meas.b2 + frame.u_t * e3);
    const Mat3 m = m_matrix(frame, gains.g);
    const Vec3 omega = m * (f_mu_d - gains.k_v * (sat_phi(v) * drag_meas)) + psi;

    // Velocity filter, one explicit Euler step.
    const Vec3 v_hat_dot = gains.g * e3 + rd_t * meas.b2 + gains.k_1 * (v - state.v_hat) +
                           (1.0 / gains.k_1) * (rd_t * (skew(meas.b2) * psi));

    StepResult r;
    r.output.u_t = frame.u_t;
    r.output.omega = omega;
    r.output.mu_d = mu_d;
    r.output.psi = psi;
    r.output.frame = frame;
    r.next.v_hat = state.v_hat + dt * v_hat_dot;
    r.next.last_frame = frame;
    r.next.last_omega_cmd = omega;
    return r;
}

} // namespace vtolctl
