#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "vtolctl/mathx.hpp"
#include "vtolctl/measurements.hpp"
#include "vtolctl/plant.hpp"

namespace vtolctl {

// All angular quantities are stored in rad/s; config ingestion converts from
// the deg/s units used in scenario files.
struct SensorParams {
    Vec3 r1 = {0.18, 0.0, 0.54};   // inertial magnetic field, gauss
    double noise_std_pos = 0.0;    // m
    double noise_std_vel = 0.0;    // m/s
    double noise_std_mag = 0.0;    // gauss
    double noise_std_acc = 0.0;    // m/s^2
    double noise_std_gyro = 0.0;   // rad/s
    Vec3 gyro_bias{};              // rad/s
    double g = 9.81;               // m/s^2, for the accelerometer model
    std::uint64_t seed = 1;
};

// One independent Gaussian stream per sensor, split from the master seed, so
// the draw order across sensors never changes a given sensor's sequence.
class SensorRng {
  public:
    enum Channel { position = 0, velocity, magnetometer, accelerometer, gyroscope, channel_count };

    explicit SensorRng(std::uint64_t master_seed);

    double normal(Channel c);
    Vec3 normal3(Channel c);

  private:
    std::array<std::mt19937_64, channel_count> engines_;
    std::array<std::normal_distribution<double>, channel_count> dists_;
};

// Individual channels; v_dot must be the plant-truth acceleration at the
// sampling instant.
Vec3 measure_position(const PlantState& state, const SensorParams& params, SensorRng& rng);
Vec3 measure_velocity(const PlantState& state, const SensorParams& params, SensorRng& rng);
Vec3 measure_mag(const PlantState& state, const SensorParams& params, SensorRng& rng);
Vec3 measure_accel(const PlantState& state, const Vec3& v_dot, const SensorParams& params,
                   SensorRng& rng);

// All four channels in one call (identical streams as the split functions).
Measurements measure(const PlantState& state, const Vec3& v_dot, const SensorParams& params,
                     SensorRng& rng);

// Actuation-side gyro corruption: omega_applied = omega_cmd + bias + noise.
Vec3 corrupt_gyro(const Vec3& omega_cmd, const SensorParams& params, SensorRng& rng);

} // namespace vtolctl
