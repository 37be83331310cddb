#pragma once

#include "vtolctl/extraction.hpp"
#include "vtolctl/mathx.hpp"
#include "vtolctl/measurements.hpp"

namespace vtolctl {

// Position-loop gains. The thrust window [g - k_p - k_v, g + k_p + k_v]
// stays positive because validation enforces k_p + k_v < g.
struct ControlGains {
    double k_p = 5.0;
    double k_v = 0.1;
    double k_1 = 5.0;       // velocity-filter gain
    double gamma_1 = 0.1;   // magnetometer correction weight
    double gamma_2 = 0.05;  // accelerometer correction weight
    double g = 9.81;
};

// Throws ValidationError unless every gain is positive and k_p + k_v < g.
void validate(const ControlGains& gains);

// Everything the controller carries between ticks. The filter state v_hat is
// the only dynamic quantity; the last frame and command are kept for
// zero-order-hold bookkeeping and logging.
struct ControllerState {
    Vec3 v_hat{};
    DesiredFrame last_frame{};
    Vec3 last_omega_cmd{};
};

// Initial controller state: hover-trim frame (u_t = g, identity attitude).
ControllerState initial_controller_state(const Vec3& v_hat0, double g);

struct ControlOutput {
    double u_t = 0.0;
    Vec3 omega{};
    Vec3 mu_d{};
    Vec3 psi{};
    DesiredFrame frame{};
};

struct StepResult {
    ControlOutput output{};
    ControllerState next{};
};

// Desired acceleration mu_d = -k_p h(e_p) - k_v h(v); bounded away from the
// extraction singularity by construction.
Vec3 compute_mu_d(const Vec3& e_p, const Vec3& v, const ControlGains& gains);

// Vector-measurement correction psi = gamma_1 S(R_d r1) b1
//                                   + gamma_2 k_1 S(R_d (v - v_hat)) b2.
Vec3 compute_psi(const DesiredFrame& frame, const Vec3& b1, const Vec3& b2, const Vec3& v,
                 const Vec3& v_hat, const Vec3& r1, const ControlGains& gains);

// One controller tick: extraction, angular-velocity law, and one explicit
// Euler update of the velocity filter over dt. Consumes only measurements
// and its own state; r1 is the known inertial magnetic field. Throws
// NonFiniteError on non-finite measurements.
StepResult step(const Measurements& meas, const Vec3& p_r, const Vec3& r1,
                const ControllerState& state, const ControlGains& gains, double dt);

} // namespace vtolctl
