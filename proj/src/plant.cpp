#include "vtolctl/plant.hpp"

#include "vtolctl/errors.hpp"

namespace vtolctl {

Vec3 aero_drag(const Vec3& v, const UnitQuaternion& q, const PlantParams& params) {
    const Vec3 rel = v - params.v_w;
    const Mat3 r = quat_to_rot(q);
    return (-rel.norm() / params.mass) * (r.transpose() * (params.c_d * (r * rel)));
}

PlantDeriv deriv(const PlantState& state, double u_t, const Vec3& omega,
                 const PlantParams& params) {
    PlantDeriv d;
    d.p_dot = state.v;
    const Mat3 r = quat_to_rot(state.q);
    d.v_dot = params.g * Vec3::unit_z() - u_t * (r.transpose() * Vec3::unit_z()) +
              aero_drag(state.v, state.q, params);
    d.q_rate = quat_rate(state.q, omega);
    return d;
}

namespace {

// Raw 10-component state for the integrator stages; the quaternion is
// treated as a point in R^4 until the final renormalization.
struct RawState {
    Vec3 p, v;
    double eta;
    Vec3 q;
};

RawState advance(const RawState& s, const PlantDeriv& d, double dt) {
    return {s.p + dt * d.p_dot, s.v + dt * d.v_dot, s.eta + dt * d.q_rate.eta_dot,
            s.q + dt * d.q_rate.q_dot};
}

PlantDeriv eval(const RawState& s, double t, double u_t, const Vec3& omega,
                const PlantParams& params) {
    // Stage states are not exactly unit quaternions; quat_rate and
    // quat_to_rot tolerate the small drift, matching the usual treatment of
    // quaternion integration in R^4.
    PlantState st;
    st.p = s.p;
    st.v = s.v;
    st.q.eta = s.eta;
    st.q.q = s.q;
    st.t = t;
    return deriv(st, u_t, omega, params);
}

} // namespace

PlantState rk4_step(const PlantState& state, double u_t, const Vec3& omega,
                    const PlantParams& params, double dt) {
    const RawState s0{state.p, state.v, state.q.eta, state.q.q};
    const PlantDeriv k1 = eval(s0, state.t, u_t, omega, params);
    const PlantDeriv k2 = eval(advance(s0, k1, 0.5 * dt), state.t + 0.5 * dt, u_t, omega, params);
    const PlantDeriv k3 = eval(advance(s0, k2, 0.5 * dt), state.t + 0.5 * dt, u_t, omega, params);
    const PlantDeriv k4 = eval(advance(s0, k3, dt), state.t + dt, u_t, omega, params);

    PlantState out;
    out.p = state.p + (dt / 6.0) * (k1.p_dot + 2.0 * k2.p_dot + 2.0 * k3.p_dot + k4.p_dot);
    out.v = state.v + (dt / 6.0) * (k1.v_dot + 2.0 * k2.v_dot + 2.0 * k3.v_dot + k4.v_dot);
    const double eta = state.q.eta + (dt / 6.0) * (k1.q_rate.eta_dot + 2.0 * k2.q_rate.eta_dot +
                                                   2.0 * k3.q_rate.eta_dot + k4.q_rate.eta_dot);
    const Vec3 q = state.q.q + (dt / 6.0) * (k1.q_rate.q_dot + 2.0 * k2.q_rate.q_dot +
                                             2.0 * k3.q_rate.q_dot + k4.q_rate.q_dot);
    out.q = UnitQuaternion::normalized(eta, q);
    out.t = state.t + dt;
    if (!out.p.is_finite() || !out.v.is_finite() || !std::isfinite(out.q.eta) ||
        !out.q.q.is_finite()) {
        throw NonFiniteError("rk4_step: non-finite state");
    }
    return out;
}

} // namespace vtolctl
