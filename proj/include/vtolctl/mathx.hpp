#pragma once

#include <array>
#include <cmath>

namespace vtolctl {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    static constexpr Vec3 zero() { return {0.0, 0.0, 0.0}; }
    static constexpr Vec3 unit_x() { return {1.0, 0.0, 0.0}; }
    static constexpr Vec3 unit_y() { return {0.0, 1.0, 0.0}; }
    static constexpr Vec3 unit_z() { return {0.0, 0.0, 1.0}; }

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    [[nodiscard]] constexpr double squared_norm() const { return x * x + y * y + z * z; }
    [[nodiscard]] double norm() const { return std::sqrt(squared_norm()); }
    [[nodiscard]] bool is_finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Row-major 3x3 matrix.
struct Mat3 {
    std::array<double, 9> m{};

    static constexpr Mat3 zero() { return {}; }
    static constexpr Mat3 identity() {
        return {{1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0}};
    }
    static constexpr Mat3 diagonal(double a, double b, double c) {
        return {{a, 0.0, 0.0, 0.0, b, 0.0, 0.0, 0.0, c}};
    }
    // u v^T
    static constexpr Mat3 outer(const Vec3& u, const Vec3& v) {
        return {{u.x * v.x, u.x * v.y, u.x * v.z,
                 u.y * v.x, u.y * v.y, u.y * v.z,
                 u.z * v.x, u.z * v.y, u.z * v.z}};
    }

    constexpr double operator()(int r, int c) const { return m[3 * r + c]; }
    constexpr double& operator()(int r, int c) { return m[3 * r + c]; }

    constexpr Mat3 operator+(const Mat3& o) const {
        Mat3 out;
        for (int i = 0; i < 9; ++i) out.m[i] = m[i] + o.m[i];
        return out;
    }
    constexpr Mat3 operator-(const Mat3& o) const {
        Mat3 out;
        for (int i = 0; i < 9; ++i) out.m[i] = m[i] - o.m[i];
        return out;
    }
    constexpr Mat3 operator*(double s) const {
        Mat3 out;
        for (int i = 0; i < 9; ++i) out.m[i] = m[i] * s;
        return out;
    }
    constexpr Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    constexpr Mat3 operator*(const Mat3& o) const {
        Mat3 out;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                out(r, c) = (*this)(r, 0) * o(0, c) + (*this)(r, 1) * o(1, c) +
                            (*this)(r, 2) * o(2, c);
        return out;
    }

    [[nodiscard]] constexpr Mat3 transpose() const {
        return {{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
    }
    [[nodiscard]] double frobenius_norm() const {
        double s = 0.0;
        for (double v : m) s += v * v;
        return std::sqrt(s);
    }
    [[nodiscard]] bool is_finite() const {
        for (double v : m)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

constexpr Mat3 operator*(double s, const Mat3& a) { return a * s; }

// Unit quaternion Q = (eta, q), scalar part first. Public operations keep
// eta^2 + |q|^2 = 1 by renormalizing.
struct UnitQuaternion {
    double eta = 1.0;
    Vec3 q{};

    static constexpr UnitQuaternion identity() { return {}; }
    // Builds a unit quaternion from unnormalized components.
    static UnitQuaternion normalized(double eta, const Vec3& q);

    [[nodiscard]] double norm() const { return std::sqrt(eta * eta + q.squared_norm()); }
};

// S(x): the skew-symmetric matrix with S(x) y = cross(x, y).
Mat3 skew(const Vec3& x);

// Hamilton-convention product; composes with R(a * b) = R(b) R(a).
UnitQuaternion quat_mul(const UnitQuaternion& a, const UnitQuaternion& b);
UnitQuaternion quat_inv(const UnitQuaternion& a);

// Direction cosine matrix taking inertial vectors to body frame.
Mat3 quat_to_rot(const UnitQuaternion& a);

// Quaternion kinematics for body-referenced angular velocity:
// d/dt (eta, q) = 1/2 (-q . omega, (eta I + S(q)) omega).
struct QuatRate {
    double eta_dot = 0.0;
    Vec3 q_dot{};
};
QuatRate quat_rate(const UnitQuaternion& a, const Vec3& omega);

// Bounded saturation h(u) = u / sqrt(1 + u.u), |h| < 1.
Vec3 sat_h(const Vec3& u);

// Jacobian of sat_h: phi(u) = (1 + u.u)^(-3/2) (I - S(u)^2), symmetric
// positive definite with unit norm at the origin.
Mat3 sat_phi(const Vec3& u);

// Eigenvalues of a symmetric matrix, ascending. Uses the closed-form
// trigonometric solution; exact for diagonal input.
std::array<double, 3> sym_eigenvalues(const Mat3& a);

// Largest singular value, via the symmetric eigenproblem of A^T A.
double spectral_norm(const Mat3& a);

} // namespace vtolctl
