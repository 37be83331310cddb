#pragma once

#include "vtolctl/mathx.hpp"

namespace vtolctl {

// Thrust magnitude and desired attitude realizing a desired translational
// acceleration mu_d, i.e. mu_d = g e3 - u_t R_d^T e3.
struct DesiredFrame {
    double u_t = 0.0;
    UnitQuaternion q_d{};
    Mat3 r_d = Mat3::identity();
    Vec3 mu_d{};
};

// True when mu_d lies on the vertical ray {(0, 0, z) : z >= g} where no
// finite attitude/thrust pair exists (tolerance 1e-12 on each test).
[[nodiscard]] bool check_singularity(const Vec3& mu_d, double g);

// Closed-form extraction. Throws SingularityError on the singular ray and
// NonFiniteError for non-finite input.
DesiredFrame extract(const Vec3& mu_d, double g);

// Matrix mapping the desired-acceleration rate to the desired angular
// velocity, omega_d = M(mu_d) dmu_d/dt. Throws DegenerateFrameError when the
// frame is too close to the 180-degree branch (eta_d <= 1e-9).
Mat3 m_matrix(const DesiredFrame& frame, double g);

} // namespace vtolctl
