#pragma once

#include "vtolctl/mathx.hpp"

namespace vtolctl {

struct PlantParams {
    double mass = 5.0;                              // kg
    Mat3 c_d = Mat3::diagonal(0.1, 0.1, 0.05);      // drag coefficients, kg/m
    Vec3 v_w{};                                     // steady wind, m/s (inertial)
    double g = 9.81;                                // m/s^2
};

// Rigid-body state; e3 points down, attitude maps inertial to body.
struct PlantState {
    Vec3 p{};
    Vec3 v{};
    UnitQuaternion q{};
    double t = 0.0;
};

struct PlantDeriv {
    Vec3 p_dot{};
    Vec3 v_dot{};
    QuatRate q_rate{};
};

// Aerodynamic acceleration -1/m |v - v_w| R^T C_d R (v - v_w); dissipative
// when v_w = 0.
Vec3 aero_drag(const Vec3& v, const UnitQuaternion& q, const PlantParams& params);

// Translational and quaternion derivatives under thrust u_t (along the
// negative body z axis) and body angular velocity omega.
PlantDeriv deriv(const PlantState& state, double u_t, const Vec3& omega,
                 const PlantParams& params);

// Classic fixed-step RK4 over (p, v, Q) with zero-order-held inputs; the
// quaternion is renormalized once per step. Throws NonFiniteError if the
// step produces a non-finite state.
PlantState rk4_step(const PlantState& state, double u_t, const Vec3& omega,
                    const PlantParams& params, double dt);

} // namespace vtolctl
