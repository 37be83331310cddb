#include "vtolctl/mathx.hpp"

#include <algorithm>

namespace vtolctl {

UnitQuaternion UnitQuaternion::normalized(double eta, const Vec3& q) {
    const double n = std::sqrt(eta * eta + q.squared_norm());
    return UnitQuaternion{eta / n, q / n};
}

Mat3 skew(const Vec3& x) {
    return {{0.0, -x.z, x.y,
             x.z, 0.0, -x.x,
             -x.y, x.x, 0.0}};
}

UnitQuaternion quat_mul(const UnitQuaternion& a, const UnitQuaternion& b) {
    const double eta = a.eta * b.eta - dot(a.q, b.q);
    const Vec3 q = a.eta * b.q + b.eta * a.q + cross(a.q, b.q);
    return UnitQuaternion::normalized(eta, q);
}

UnitQuaternion quat_inv(const UnitQuaternion& a) {
    return UnitQuaternion::normalized(a.eta, -a.q);
}

Mat3 quat_to_rot(const UnitQuaternion& a) {
    const Mat3 s = skew(a.q);
    return Mat3::identity() + 2.0 * (s * s) - 2.0 * a.eta * s;
}

QuatRate quat_rate(const UnitQuaternion& a, const Vec3& omega) {
    QuatRate r;
    r.eta_dot = -0.5 * dot(a.q, omega);
    r.q_dot = 0.5 * (a.eta * omega + cross(a.q, omega));
    return r;
}

Vec3 sat_h(const Vec3& u) {
    return u / std::sqrt(1.0 + u.squared_norm());
}

Mat3 sat_phi(const Vec3& u) {
    const double c = std::pow(1.0 + u.squared_norm(), -1.5);
    const Mat3 s = skew(u);
    return c * (Mat3::identity() - s * s);
}

std::array<double, 3> sym_eigenvalues(const Mat3& a) {
    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (p1 == 0.0) {
        std::array<double, 3> eig{a(0, 0), a(1, 1), a(2, 2)};
        std::sort(eig.begin(), eig.end());
        return eig;
    }
    const double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    const Mat3 b = (a - q * Mat3::identity()) * (1.0 / p);
    const double detb = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                        b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                        b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    const double r = std::clamp(detb / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double hi = q + 2.0 * p * std::cos(phi);
    const double lo = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    const double mid = 3.0 * q - hi - lo;
    return {lo, mid, hi};
}

double spectral_norm(const Mat3& a) {
    const Mat3 ata = a.transpose() * a;
    const double lmax = sym_eigenvalues(ata)[2];
    return std::sqrt(std::max(lmax, 0.0));
}

} // namespace vtolctl
