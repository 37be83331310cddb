#include "vtolctl/analysis.hpp"

namespace vtolctl {

UnitQuaternion attitude_error(const UnitQuaternion& q, const UnitQuaternion& q_d) {
    return quat_mul(q, quat_inv(q_d));
}

Vec3 tilde_r2(const Vec3& v, const Vec3& v_hat, double k_1, const Mat3& tilde_rot,
              const Vec3& r2) {
    return k_1 * (v - v_hat) - ((Mat3::identity() - tilde_rot) * r2);
}

double lyapunov(const Vec3& e_p, const Vec3& v, const Vec3& tr2, double tilde_eta, double k_p,
                const LyapunovWeights& w) {
    return w.gamma * k_p * (std::sqrt(1.0 + e_p.squared_norm()) - 1.0) +
           0.5 * w.gamma * v.squared_norm() + 0.5 * w.gamma * w.k_r * tr2.squared_norm() +
           w.gamma_q * (1.0 - tilde_eta * tilde_eta);
}

double w_min_eig(const Vec3& r1, const Vec3& r2, double gamma_1, double gamma_2) {
    // Collinear inputs make W exactly singular; report the exact zero rather
    // than the rounding noise of the general eigensolve.
    const Vec3 c = cross(r1, r2);
    if (c.x == 0.0 && c.y == 0.0 && c.z == 0.0) {
        return 0.0;
    }
    const Mat3 s1 = skew(r1);
    const Mat3 s2 = skew(r2);
    const Mat3 w = (-gamma_1) * (s1 * s1) + (-gamma_2) * (s2 * s2);
    return sym_eigenvalues(w)[0];
}

std::pair<Mat3, Mat3> factorization_check(double u_t, const UnitQuaternion& tilde_q,
                                          const Vec3& r_body_e3, const Vec3& x) {
    const Mat3 sq = skew(tilde_q.q);
    const Mat3 eta_i = tilde_q.eta * Mat3::identity();
    const Mat3 f1 = 2.0 * u_t * ((eta_i - sq) * skew(r_body_e3));
    const Mat3 f2 = 2.0 * ((sq - eta_i) * skew(x));
    return {f1, f2};
}

Diagnostics compute_diagnostics(const PlantState& state, const Vec3& delta,
                                const DesiredFrame& frame, const Vec3& v_hat, const Vec3& p_r,
                                const Vec3& r1, const ControlGains& gains,
                                const LyapunovWeights& w) {
    const Vec3 e3 = Vec3::unit_z();
    const Mat3 rt = quat_to_rot(state.q).transpose();

    Diagnostics d;
    d.e_p = state.p - p_r;
    d.v = state.v;
    d.u_t = frame.u_t;
    d.tilde_q = attitude_error(state.q, frame.q_d);

    const Vec3 r2 = -frame.u_t * (rt * e3) + delta; // v_dot - g e3
    const Mat3 tilde_rot = quat_to_rot(d.tilde_q);
    d.tilde_r2 = tilde_r2(state.v, v_hat, gains.k_1, tilde_rot, r2);
    d.lyapunov_v = lyapunov(d.e_p, d.v, d.tilde_r2, d.tilde_q.eta, gains.k_p, w);
    d.w_min_eig = w_min_eig(r1, r2, gains.gamma_1, gains.gamma_2);

    const Vec3 mu = gains.g * e3 - frame.u_t * (rt * e3);
    d.tilde_mu = mu - frame.mu_d;
    return d;
}

} // namespace vtolctl
