#include "vtolctl/sensors.hpp"

namespace vtolctl {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

SensorRng::SensorRng(std::uint64_t master_seed) {
    for (int c = 0; c < channel_count; ++c) {
        engines_[c].seed(splitmix64(master_seed ^ (0x9e3779b97f4a7c15ULL * (c + 1))));
    }
}

double SensorRng::normal(Channel c) {
    return dists_[c](engines_[c]);
}

Vec3 SensorRng::normal3(Channel c) {
    const double x = normal(c);
    const double y = normal(c);
    const double z = normal(c);
    return {x, y, z};
}

Vec3 measure_position(const PlantState& state, const SensorParams& params, SensorRng& rng) {
    return state.p + params.noise_std_pos * rng.normal3(SensorRng::position);
}

Vec3 measure_velocity(const PlantState& state, const SensorParams& params, SensorRng& rng) {
    return state.v + params.noise_std_vel * rng.normal3(SensorRng::velocity);
}

Vec3 measure_mag(const PlantState& state, const SensorParams& params, SensorRng& rng) {
    const Mat3 r = quat_to_rot(state.q);
    return r * params.r1 + params.noise_std_mag * rng.normal3(SensorRng::magnetometer);
}

Vec3 measure_accel(const PlantState& state, const Vec3& v_dot, const SensorParams& params,
                   SensorRng& rng) {
    const Mat3 r = quat_to_rot(state.q);
    const Vec3 r2 = v_dot - params.g * Vec3::unit_z();
    return r * r2 + params.noise_std_acc * rng.normal3(SensorRng::accelerometer);
}

Measurements measure(const PlantState& state, const Vec3& v_dot, const SensorParams& params,
                     SensorRng& rng) {
    Measurements m;
    m.p_meas = measure_position(state, params, rng);
    m.v_meas = measure_velocity(state, params, rng);
    m.b1 = measure_mag(state, params, rng);
    m.b2 = measure_accel(state, v_dot, params, rng);
    m.t = state.t;
    return m;
}

Vec3 corrupt_gyro(const Vec3& omega_cmd, const SensorParams& params, SensorRng& rng) {
    return omega_cmd + params.gyro_bias + params.noise_std_gyro * rng.normal3(SensorRng::gyroscope);
}

} // namespace vtolctl
