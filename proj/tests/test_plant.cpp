#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "vtolctl/errors.hpp"
#include "vtolctl/plant.hpp"

using namespace vtolctl;
using namespace vtolctl::testutil;

namespace {

PlantState rand_state(std::mt19937_64& rng) {
    PlantState s;
    s.p = rand_vec3(rng, 100.0);
    s.v = rand_vec3(rng, 15.0);
    s.q = rand_quat(rng);
    s.t = 0.0;
    return s;
}

} // namespace

TEST_CASE("drag vanishes at zero airspeed and dissipates otherwise") {
    PlantParams params;
    params.v_w = {10.0, 5.0, 0.0};
    CHECK(aero_drag(params.v_w, UnitQuaternion::identity(), params).norm() == 0.0);

    std::mt19937_64 rng(51);
    for (int i = 0; i < 5000; ++i) {
        const Vec3 v = rand_vec3(rng, 20.0);
        const UnitQuaternion q = rand_quat(rng);
        const Vec3 delta = aero_drag(v, q, params);
        CHECK(dot(delta, v - params.v_w) <= 0.0);
    }
}

TEST_CASE("drag literal value for unit airspeed along x") {
    PlantParams params; // mass 5, C_d diag(0.1, 0.1, 0.05), no wind
    const Vec3 delta = aero_drag({1.0, 0.0, 0.0}, UnitQuaternion::identity(), params);
    CHECK(max_abs_diff(delta, {-0.02, 0.0, 0.0}) < 1e-15);
}

TEST_CASE("derivatives: hover equilibrium and free fall") {
    PlantParams params;
    PlantState s;
    s.v = Vec3::zero();
    s.q = UnitQuaternion::identity();

    const PlantDeriv hover = deriv(s, params.g, Vec3::zero(), params);
    CHECK(hover.p_dot.norm() == 0.0);
    CHECK(hover.v_dot.norm() < 1e-15);
    CHECK(hover.q_rate.eta_dot == 0.0);
    CHECK(hover.q_rate.q_dot.norm() == 0.0);

    const PlantDeriv fall = deriv(s, 0.0, Vec3::zero(), params);
    CHECK(max_abs_diff(fall.v_dot, Vec3::unit_z() * params.g) < 1e-15);
}

TEST_CASE("accelerometer identity R(v_dot - g e3) = -u_t e3 + R delta") {
    PlantParams params;
    params.v_w = {10.0, 5.0, 0.0};
    std::mt19937_64 rng(52);
    for (int i = 0; i < 10000; ++i) {
        const PlantState s = rand_state(rng);
        const double u_t = 4.71 + 10.0 * std::generate_canonical<double, 53>(rng);
        const PlantDeriv d = deriv(s, u_t, rand_vec3(rng, 2.0), params);
        const Mat3 rot = quat_to_rot(s.q);
        const Vec3 lhs = rot * (d.v_dot - Vec3::unit_z() * params.g);
        const Vec3 rhs = Vec3::unit_z() * (-u_t) + rot * aero_drag(s.v, s.q, params);
        CHECK(max_abs_diff(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("r2 = v_dot - g e3 equals -u_t R^T e3 + delta") {
    PlantParams params;
    params.v_w = {-3.0, 2.0, 1.0};
    std::mt19937_64 rng(53);
    for (int i = 0; i < 5000; ++i) {
        const PlantState s = rand_state(rng);
        const double u_t = 9.81;
        const PlantDeriv d = deriv(s, u_t, Vec3::zero(), params);
        const Mat3 rot = quat_to_rot(s.q);
        const Vec3 r2 = d.v_dot - Vec3::unit_z() * params.g;
        const Vec3 expected = rot.transpose() * Vec3::unit_z() * (-u_t) +
                              aero_drag(s.v, s.q, params);
        CHECK(max_abs_diff(r2, expected) < 1e-12);
    }
}

TEST_CASE("rk4 keeps the equilibrium fixed") {
    PlantParams params;
    PlantState s;
    s.p = {3.0, -2.0, 1.0};
    const PlantState next = rk4_step(s, params.g, Vec3::zero(), params, 1e-3);
    CHECK(max_abs_diff(next.p, s.p) < 1e-15);
    CHECK(next.v.norm() < 1e-15);
    CHECK(quat_distance(next.q, s.q) < 1e-15);
    CHECK(next.t == doctest::Approx(1e-3));
}

TEST_CASE("constant yaw rate matches the closed-form attitude solution") {
    PlantParams params; // pure yaw keeps v = 0, so drag never engages
    PlantState s;
    const Vec3 omega{0.0, 0.0, M_PI};
    const double dt = 1e-4;
    for (int k = 0; k < 10000; ++k) s = rk4_step(s, params.g, omega, params, dt);

    // Q(t) = (cos(|w| t / 2), sin(|w| t / 2) w_hat) at t = 1
    const UnitQuaternion expected{std::cos(M_PI / 2.0), {0.0, 0.0, std::sin(M_PI / 2.0)}};
    CHECK(quat_distance(s.q, expected) < 1e-8);
    CHECK(std::abs(s.q.norm() - 1.0) <= 1e-9);
}

TEST_CASE("fourth-order convergence under dt halving") {
    // fast tumble so truncation error sits well above double-precision noise
    PlantParams params;
    params.v_w = {10.0, 5.0, 0.0};
    PlantState init;
    init.p = {1.0, 2.0, 3.0};
    init.v = {4.0, -2.0, 1.5};
    init.q = UnitQuaternion::normalized(0.9, {0.2, -0.3, 0.1});

    const double u_t = 15.0;
    const Vec3 omega{2.4, -3.1, 1.7};
    auto integrate = [&](double dt, double horizon) {
        PlantState s = init;
        const int n = static_cast<int>(std::round(horizon / dt));
        for (int k = 0; k < n; ++k) s = rk4_step(s, u_t, omega, params, dt);
        return s;
    };

    const PlantState ref = integrate(1e-4, 1.0);
    auto err = [&](const PlantState& s) {
        return (s.p - ref.p).norm() + (s.v - ref.v).norm() + quat_distance(s.q, ref.q);
    };
    const double e_coarse = err(integrate(4e-3, 1.0));
    const double e_fine = err(integrate(2e-3, 1.0));
    const double ratio = e_coarse / e_fine;
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 32.0);
}

TEST_CASE("kinetic energy decays under exact thrust-gravity cancellation") {
    PlantParams params; // no wind
    PlantState s;
    s.v = {5.0, -3.0, 2.0};
    double ke = 0.5 * s.v.squared_norm();
    for (int k = 0; k < 20000; ++k) {
        s = rk4_step(s, params.g, Vec3::zero(), params, 1e-3);
        const double next = 0.5 * s.v.squared_norm();
        CHECK(next <= ke + 1e-15);
        ke = next;
    }
    CHECK(ke < 0.5 * Vec3{5.0, -3.0, 2.0}.squared_norm());
}

TEST_CASE("quaternion norm stays unit through a long tumble") {
    PlantParams params;
    params.v_w = {10.0, 5.0, 0.0};
    PlantState s;
    s.v = {1.0, 1.0, 0.0};
    const Vec3 omega{0.3, -0.8, 1.7};
    for (int k = 0; k < 60000; ++k) {
        s = rk4_step(s, 9.0, omega, params, 1e-3);
        CHECK(std::abs(s.q.norm() - 1.0) <= 1e-9);
    }
}

TEST_CASE("non-finite propagation is rejected") {
    PlantParams params;
    PlantState s;
    CHECK_THROWS_AS(rk4_step(s, std::nan(""), Vec3::zero(), params, 1e-3), NonFiniteError);
}
