#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "test_util.hpp"
#include "vtolctl/sensors.hpp"

using namespace vtolctl;
using namespace vtolctl::testutil;

namespace {

constexpr double kDegToRad = M_PI / 180.0;

double sample_std(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

SensorParams noise_free() {
    SensorParams p;
    p.noise_std_pos = 0.0;
    p.noise_std_vel = 0.0;
    p.noise_std_mag = 0.0;
    p.noise_std_acc = 0.0;
    p.noise_std_gyro = 0.0;
    p.gyro_bias = Vec3::zero();
    return p;
}

} // namespace

TEST_CASE("noise-free sensors reproduce truth exactly") {
    const SensorParams params = noise_free();
    SensorRng rng(params.seed);

    PlantState s;
    s.p = {150.0, 50.0, 0.0};
    s.v = {1.0, -2.0, 0.5};
    s.q = UnitQuaternion::identity();

    const Vec3 v_dot = Vec3::zero(); // hover: thrust g cancels gravity
    const Measurements m = measure(s, v_dot, params, rng);
    CHECK(max_abs_diff(m.p_meas, s.p) == 0.0);
    CHECK(max_abs_diff(m.v_meas, s.v) == 0.0);
    CHECK(max_abs_diff(m.b1, {0.18, 0.0, 0.54}) == 0.0);
    CHECK(max_abs_diff(m.b2, Vec3::unit_z() * (-params.g)) == 0.0);
}

TEST_CASE("body-frame rotation applied to magnetometer and accelerometer") {
    const SensorParams params = noise_free();
    SensorRng rng(7);
    std::mt19937_64 qrng(61);
    for (int i = 0; i < 1000; ++i) {
        PlantState s;
        s.q = rand_quat(qrng);
        const Vec3 v_dot = rand_vec3(qrng, 10.0);
        const Mat3 rot = quat_to_rot(s.q);
        CHECK(max_abs_diff(measure_mag(s, params, rng), rot * params.r1) < 1e-15);
        CHECK(max_abs_diff(measure_accel(s, v_dot, params, rng),
                           rot * (v_dot - Vec3::unit_z() * params.g)) < 1e-15);
    }
}

TEST_CASE("per-axis sample standard deviations match configuration") {
    SensorParams params = noise_free();
    params.noise_std_pos = 0.5;
    params.noise_std_gyro = 0.1 * kDegToRad;
    params.seed = 99;
    SensorRng rng(params.seed);

    PlantState s; // truth at origin so measurements are pure noise
    const int n = 100000;
    std::vector<double> xs(n), ys(n), zs(n), gx(n);
    for (int i = 0; i < n; ++i) {
        const Vec3 p = measure_position(s, params, rng);
        xs[i] = p.x;
        ys[i] = p.y;
        zs[i] = p.z;
        gx[i] = corrupt_gyro(Vec3::zero(), params, rng).x;
    }
    CHECK(sample_std(xs) > 0.49);
    CHECK(sample_std(xs) < 0.51);
    CHECK(sample_std(ys) > 0.49);
    CHECK(sample_std(ys) < 0.51);
    CHECK(sample_std(zs) > 0.49);
    CHECK(sample_std(zs) < 0.51);
    CHECK(sample_std(gx) == doctest::Approx(params.noise_std_gyro).epsilon(0.02));
}

TEST_CASE("gyro corruption: identity map and exact bias injection") {
    SensorParams params = noise_free();
    SensorRng rng(1);
    const Vec3 cmd{0.2, -0.1, 0.05};
    CHECK(max_abs_diff(corrupt_gyro(cmd, params, rng), cmd) == 0.0);

    params.gyro_bias = Vec3{0.1, 0.05, -0.2} * kDegToRad;
    SensorRng rng2(1);
    const Vec3 corrupted = corrupt_gyro(cmd, params, rng2);
    CHECK(max_abs_diff(corrupted, cmd + params.gyro_bias) == 0.0);
}

TEST_CASE("identical seeds give bit-identical streams") {
    SensorParams params = noise_free();
    params.noise_std_pos = 0.5;
    params.noise_std_vel = 0.5;
    params.noise_std_mag = 0.01;
    params.noise_std_acc = 0.1;
    params.noise_std_gyro = 0.1 * kDegToRad;
    params.seed = 1234;

    PlantState s;
    s.p = {1.0, 2.0, 3.0};
    s.v = {0.1, 0.2, 0.3};
    const Vec3 v_dot{0.0, 0.0, -1.0};

    SensorRng a(params.seed);
    SensorRng b(params.seed);
    for (int i = 0; i < 1000; ++i) {
        const Measurements ma = measure(s, v_dot, params, a);
        const Measurements mb = measure(s, v_dot, params, b);
        CHECK(max_abs_diff(ma.p_meas, mb.p_meas) == 0.0);
        CHECK(max_abs_diff(ma.v_meas, mb.v_meas) == 0.0);
        CHECK(max_abs_diff(ma.b1, mb.b1) == 0.0);
        CHECK(max_abs_diff(ma.b2, mb.b2) == 0.0);
        CHECK(max_abs_diff(corrupt_gyro(Vec3::zero(), params, a),
                           corrupt_gyro(Vec3::zero(), params, b)) == 0.0);
    }
}

TEST_CASE("channels draw from independent streams") {
    SensorParams params = noise_free();
    params.noise_std_pos = 0.5;
    params.noise_std_mag = 0.01;
    params.seed = 77;

    PlantState s;

    // stream A: positions only; stream B: interleaved magnetometer reads
    SensorRng a(params.seed);
    SensorRng b(params.seed);
    for (int i = 0; i < 200; ++i) {
        const Vec3 pa = measure_position(s, params, a);
        (void)measure_mag(s, params, b);
        const Vec3 pb = measure_position(s, params, b);
        CHECK(max_abs_diff(pa, pb) == 0.0);
    }
}

TEST_CASE("composite measure equals the individual channel calls") {
    SensorParams params = noise_free();
    params.noise_std_pos = 0.5;
    params.noise_std_vel = 0.5;
    params.noise_std_mag = 0.01;
    params.noise_std_acc = 0.1;
    params.seed = 5;

    PlantState s;
    s.p = {10.0, -4.0, 2.0};
    s.v = {1.0, 0.0, -1.0};
    std::mt19937_64 qrng(62);
    s.q = rand_quat(qrng);
    const Vec3 v_dot{0.5, 0.5, -9.0};

    SensorRng a(params.seed);
    SensorRng b(params.seed);
    const Measurements whole = measure(s, v_dot, params, a);
    CHECK(max_abs_diff(whole.p_meas, measure_position(s, params, b)) == 0.0);
    CHECK(max_abs_diff(whole.v_meas, measure_velocity(s, params, b)) == 0.0);
    CHECK(max_abs_diff(whole.b1, measure_mag(s, params, b)) == 0.0);
    CHECK(max_abs_diff(whole.b2, measure_accel(s, v_dot, params, b)) == 0.0);
}
