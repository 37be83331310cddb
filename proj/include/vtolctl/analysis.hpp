#pragma once

#include <utility>

#include "vtolctl/controller.hpp"
#include "vtolctl/extraction.hpp"
#include "vtolctl/mathx.hpp"
#include "vtolctl/plant.hpp"

namespace vtolctl {

// Weights of the composite energy function V. Any fixed positive choice
// works for the monotone-decrease checks.
struct LyapunovWeights {
    double gamma = 1.0;
    double gamma_q = 1.0;
    double k_r = 1.0;
};

// Proof-side quantities evaluated from plant truth plus controller state.
// These are never fed back into the controller.
struct Diagnostics {
    Vec3 e_p{};
    Vec3 v{};
    double u_t = 0.0;
    UnitQuaternion tilde_q{};
    Vec3 tilde_r2{};
    double lyapunov_v = 0.0;
    double w_min_eig = 0.0;
    Vec3 tilde_mu{};
};

// Relative attitude Q (x) Q_d^-1; R(attitude_error) = R_d^T R.
UnitQuaternion attitude_error(const UnitQuaternion& q, const UnitQuaternion& q_d);

// Combined filter/attitude error k_1 (v - v_hat) - (I - tilde_R) r2.
Vec3 tilde_r2(const Vec3& v, const Vec3& v_hat, double k_1, const Mat3& tilde_rot, const Vec3& r2);

// V = gamma k_p (sqrt(1 + |e_p|^2) - 1) + gamma/2 v.v
//   + gamma k_r / 2 |tilde_r2|^2 + gamma_q (1 - tilde_eta^2).
double lyapunov(const Vec3& e_p, const Vec3& v, const Vec3& tr2, double tilde_eta, double k_p,
                const LyapunovWeights& w);

// Smallest eigenvalue of W = -gamma_1 S(r1)^2 - gamma_2 S(r2)^2. Exactly
// zero when r1 and r2 are collinear (W is singular along the common axis).
double w_min_eig(const Vec3& r1, const Vec3& r2, double gamma_1, double gamma_2);

// The two factorization matrices of the attitude-error coupling terms:
// f1 = 2 u_t (tilde_eta I - S(tilde_q)) S(r_body_e3), r_body_e3 = R^T e3,
// f2 = 2 (S(tilde_q) - tilde_eta I) S(x).
// They satisfy mu - mu_d = f1 tilde_q and (I - tilde_R) x = f2 tilde_q.
std::pair<Mat3, Mat3> factorization_check(double u_t, const UnitQuaternion& tilde_q,
                                          const Vec3& r_body_e3, const Vec3& x);

// Full diagnostics row from plant truth, drag, the active desired frame and
// the filter state used at the same tick.
Diagnostics compute_diagnostics(const PlantState& state, const Vec3& delta,
                                const DesiredFrame& frame, const Vec3& v_hat, const Vec3& p_r,
                                const Vec3& r1, const ControlGains& gains,
                                const LyapunovWeights& w);

} // namespace vtolctl
