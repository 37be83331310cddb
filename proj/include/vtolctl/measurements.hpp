#pragma once

#include "vtolctl/mathx.hpp"

namespace vtolctl {

// Everything the controller is allowed to see: GPS position and velocity,
// magnetometer b1 = R r1 and accelerometer b2 = R (v_dot - g e3), all
// possibly noisy. No attitude channel exists.
struct Measurements {
    Vec3 p_meas{};
    Vec3 v_meas{};
    Vec3 b1{};
    Vec3 b2{};
    double t = 0.0;

    [[nodiscard]] bool is_finite() const {
        return p_meas.is_finite() && v_meas.is_finite() && b1.is_finite() && b2.is_finite() &&
               std::isfinite(t);
    }
};

} // namespace vtolctl
