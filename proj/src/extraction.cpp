#include "vtolctl/extraction.hpp"

#include "vtolctl/errors.hpp"

namespace vtolctl {

bool check_singularity(const Vec3& mu_d, double g) {
    return std::abs(mu_d.x) < 1e-12 && std::abs(mu_d.y) < 1e-12 && mu_d.z >= g - 1e-12;
}

DesiredFrame extract(const Vec3& mu_d, double g) {
    if (!mu_d.is_finite()) {
        throw NonFiniteError("extract: non-finite desired acceleration");
    }
    if (check_singularity(mu_d, g)) {
        throw SingularityError("extract: desired acceleration on the singular vertical ray");
    }
    const Vec3 e3 = Vec3::unit_z();
    DesiredFrame f;
    f.mu_d = mu_d;
    f.u_t = (mu_d - g * e3).norm();
    const double eta_d = std::sqrt(0.5 * (1.0 + (g - mu_d.z) / f.u_t));
    const Vec3 q_d = cross(mu_d, e3) / (2.0 * f.u_t * eta_d);
    f.q_d = UnitQuaternion::normalized(eta_d, q_d);
    f.r_d = quat_to_rot(f.q_d);
    return f;
}

Mat3 m_matrix(const DesiredFrame& frame, double g) {
    const double eta_d = frame.q_d.eta;
    if (eta_d <= 1e-9) {
        throw DegenerateFrameError("m_matrix: desired frame near the 180-degree branch");
    }
    const Vec3 e3 = Vec3::unit_z();
    const Vec3 mu_d = frame.mu_d;
    const double u_t = frame.u_t;
    const Mat3 s_mu = skew(mu_d);
    const Mat3 lhs = -4.0 * (s_mu * Mat3::outer(e3, e3)) + (4.0 * eta_d * eta_d * u_t) * skew(e3) +
                     2.0 * s_mu - 2.0 * mu_d.z * skew(e3);
    const Mat3 s_t = skew(mu_d - g * e3);
    const double c = 4.0 * eta_d * eta_d * u_t * u_t * u_t * u_t;
    return (1.0 / c) * (lhs * (s_t * s_t));
}

} // namespace vtolctl
