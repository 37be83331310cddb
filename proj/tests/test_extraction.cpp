#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "vtolctl/errors.hpp"
#include "vtolctl/extraction.hpp"

using namespace vtolctl;
using namespace vtolctl::testutil;

namespace {

constexpr double kG = 9.81;

Vec3 rand_admissible(std::mt19937_64& rng, double max_norm) {
    // uniform direction, uniform magnitude in [0, max_norm]
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> m(0.0, max_norm);
    Vec3 dir{n(rng), n(rng), n(rng)};
    const double len = dir.norm();
    if (len == 0.0) return Vec3::zero();
    return dir * (m(rng) / len);
}

} // namespace

TEST_CASE("singular ray membership") {
    CHECK(check_singularity({0.0, 0.0, kG}, kG));
    CHECK(check_singularity({0.0, 0.0, kG + 5.0}, kG));
    CHECK_FALSE(check_singularity({0.0, 0.0, 0.0}, kG));
    CHECK_FALSE(check_singularity({1.0, 0.0, kG + 5.0}, kG));
    CHECK_FALSE(check_singularity({0.0, 0.0, kG - 1.0}, kG));
}

TEST_CASE("extract: hover and pure climb keep level attitude") {
    const DesiredFrame hover = extract(Vec3::zero(), kG);
    CHECK(hover.u_t == doctest::Approx(kG));
    CHECK(hover.q_d.eta == doctest::Approx(1.0));
    CHECK(hover.q_d.q.norm() < 1e-12);

    const DesiredFrame climb = extract({0.0, 0.0, -2.5}, kG);
    CHECK(climb.u_t == doctest::Approx(kG + 2.5));
    CHECK(climb.q_d.eta == doctest::Approx(1.0));
    CHECK(climb.q_d.q.norm() < 1e-12);
}

TEST_CASE("extract: unit lateral demand") {
    const DesiredFrame f = extract({1.0, 0.0, 0.0}, kG);
    CHECK(f.u_t == doctest::Approx(std::sqrt(1.0 + kG * kG)));
    // vector part points along -e2
    CHECK(std::abs(f.q_d.q.x) < 1e-15);
    CHECK(f.q_d.q.y < 0.0);
    CHECK(std::abs(f.q_d.q.z) < 1e-15);

    const Vec3 rebuilt = Vec3::unit_z() * kG - f.r_d.transpose() * Vec3::unit_z() * f.u_t;
    CHECK(max_abs_diff(rebuilt, {1.0, 0.0, 0.0}) < 1e-12);
}

TEST_CASE("extract throws on the singular ray and non-finite input") {
    CHECK_THROWS_AS(extract({0.0, 0.0, kG}, kG), SingularityError);
    CHECK_THROWS_AS(extract({0.0, 0.0, kG + 3.0}, kG), SingularityError);
    CHECK_THROWS_AS(extract({std::nan(""), 0.0, 0.0}, kG), NonFiniteError);
}

TEST_CASE("reconstruction identity over the admissible ball") {
    std::mt19937_64 rng(31);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const Vec3 mu = rand_admissible(rng, 0.99 * kG);
        if (check_singularity(mu, kG)) continue;
        const DesiredFrame f = extract(mu, kG);
        const Vec3 rebuilt = Vec3::unit_z() * kG - f.r_d.transpose() * Vec3::unit_z() * f.u_t;
        worst = std::max(worst, max_abs_diff(rebuilt, mu));
        CHECK(std::abs(f.q_d.norm() - 1.0) < 1e-12);
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("thrust window under bounded demand") {
    const double k_sum = 5.1; // k_p + k_v
    std::mt19937_64 rng(32);
    for (int i = 0; i < 20000; ++i) {
        const Vec3 mu = rand_admissible(rng, k_sum);
        const DesiredFrame f = extract(mu, kG);
        CHECK(f.u_t >= kG - k_sum - 1e-12);
        CHECK(f.u_t <= kG + k_sum + 1e-12);
    }
}

TEST_CASE("extraction is locally Lipschitz away from the singular ray") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 mu = rand_admissible(rng, 0.9 * kG);
        const Vec3 bump = rand_vec3(rng, 1e-9);
        const DesiredFrame a = extract(mu, kG);
        const DesiredFrame b = extract(mu + bump, kG);
        CHECK(std::abs(a.u_t - b.u_t) <= 1e-6);
        CHECK(quat_distance(a.q_d, b.q_d) <= 1e-6);
    }
}

TEST_CASE("m_matrix norm bound") {
    const double k_sum = 5.1;
    const double c_t_lower = kG - k_sum;
    const double bound = std::sqrt(2.0) / c_t_lower;
    std::mt19937_64 rng(34);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 mu = rand_admissible(rng, k_sum);
        const DesiredFrame f = extract(mu, kG);
        worst = std::max(worst, spectral_norm(m_matrix(f, kG)));
    }
    CHECK(worst <= bound);
}

TEST_CASE("m_matrix annihilates rates along mu_d - g e3") {
    std::mt19937_64 rng(35);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 mu = rand_admissible(rng, 5.0);
        const DesiredFrame f = extract(mu, kG);
        const Vec3 axis = mu - Vec3::unit_z() * kG;
        const Vec3 omega = m_matrix(f, kG) * axis;
        CHECK(omega.norm() < 1e-9 * axis.norm());
    }
}

TEST_CASE("m_matrix maps mu_d rates to the attitude rate") {
    // central difference of the extracted rotation along a rate mu_dot must
    // satisfy dR/dt = -S(omega_d) R with omega_d = M(mu_d) mu_dot
    std::mt19937_64 rng(36);
    const double eps = 1e-6;
    auto check_point = [&](const Vec3& mu, const Vec3& mu_dot) {
        const DesiredFrame f = extract(mu, kG);
        const Vec3 omega_d = m_matrix(f, kG) * mu_dot;
        const Mat3 rp = extract(mu + eps * mu_dot, kG).r_d;
        const Mat3 rm = extract(mu - eps * mu_dot, kG).r_d;
        const Mat3 rdot = (rp - rm) * (1.0 / (2.0 * eps));
        const Mat3 expected = -1.0 * (skew(omega_d) * f.r_d);
        CHECK(max_abs_diff(rdot, expected) < 1e-6);
    };
    check_point(Vec3::zero(), Vec3::unit_x());
    for (int i = 0; i < 500; ++i) {
        check_point(rand_admissible(rng, 5.0), rand_vec3(rng, 2.0));
    }
}

TEST_CASE("integrating the extracted attitude rate tracks direct extraction") {
    // smooth demand trajectory kept inside the admissible ball
    auto mu_of = [](double t) {
        return Vec3{3.0 * std::sin(t), 3.0 * std::cos(2.0 * t), 0.9 * std::sin(3.0 * t)};
    };
    auto mu_dot_of = [](double t) {
        return Vec3{3.0 * std::cos(t), -6.0 * std::sin(2.0 * t), 2.7 * std::cos(3.0 * t)};
    };

    const double dt = 1e-4;
    UnitQuaternion q_d = extract(mu_of(0.0), kG).q_d;
    double worst = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const double t = k * dt;
        // RK4 on the quaternion rate driven by omega_d = M(mu_d) mu_dot
        auto rate_at = [&](const UnitQuaternion& q, double tau) {
            const DesiredFrame f = extract(mu_of(tau), kG);
            const Vec3 omega = m_matrix(f, kG) * mu_dot_of(tau);
            return quat_rate(q, omega);
        };
        auto advance = [](const UnitQuaternion& q, const QuatRate& r, double step) {
            UnitQuaternion out;
            out.eta = q.eta + step * r.eta_dot;
            out.q = q.q + step * r.q_dot;
            return out;
        };
        const QuatRate k1 = rate_at(q_d, t);
        const QuatRate k2 = rate_at(advance(q_d, k1, dt / 2.0), t + dt / 2.0);
        const QuatRate k3 = rate_at(advance(q_d, k2, dt / 2.0), t + dt / 2.0);
        const QuatRate k4 = rate_at(advance(q_d, k3, dt), t + dt);
        QuatRate sum;
        sum.eta_dot = (k1.eta_dot + 2.0 * k2.eta_dot + 2.0 * k3.eta_dot + k4.eta_dot) / 6.0;
        sum.q_dot = (k1.q_dot + 2.0 * (k2.q_dot + k3.q_dot) + k4.q_dot) * (1.0 / 6.0);
        q_d = UnitQuaternion::normalized(q_d.eta + dt * sum.eta_dot, q_d.q + dt * sum.q_dot);

        const UnitQuaternion direct = extract(mu_of(t + dt), kG).q_d;
        worst = std::max(worst, quat_distance(q_d, direct));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("m_matrix rejects degenerate frames") {
    DesiredFrame f;
    f.u_t = 5.0;
    f.q_d = UnitQuaternion{0.0, {0.0, 1.0, 0.0}}; // eta_d = 0: upside-down demand
    f.r_d = quat_to_rot(f.q_d);
    f.mu_d = Vec3::zero();
    CHECK_THROWS_AS(m_matrix(f, kG), DegenerateFrameError);
}
