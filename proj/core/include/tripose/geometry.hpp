#pragma once

#include <algorithm>
#include <cmath>

namespace tripose {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    Vec3 normalized() const {
        const double n = norm();
        return {x / n, y / n, z / n};
    }
};

struct PixelCoord {
    int x = 0;
    int y = 0;
};

// Row-major 3x3 matrix.
struct Mat3 {
    double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    Vec3 apply(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                r.m[i][j] = 0.0;
                for (int k = 0; k < 3; ++k) r.m[i][j] += m[i][k] * o.m[k][j];
            }
        return r;
    }

    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        Mat3 r;
        r.m[0][0] = c0.x; r.m[0][1] = c1.x; r.m[0][2] = c2.x;
        r.m[1][0] = c0.y; r.m[1][1] = c1.y; r.m[1][2] = c2.y;
        r.m[2][0] = c0.z; r.m[2][1] = c1.z; r.m[2][2] = c2.z;
        return r;
    }
};

struct EulerAngles {
    double yaw_deg = 0.0;
    double pitch_deg = 0.0;
    double roll_deg = 0.0;
};

inline double deg_to_rad(double deg) { return deg * M_PI / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / M_PI; }

// R = Rz(roll) * Ry(yaw) * Rx(pitch). Axes: x right, y down, z forward.
inline Mat3 rotation_zyx(const EulerAngles& angles) {
    const double ca = std::cos(deg_to_rad(angles.pitch_deg));
    const double sa = std::sin(deg_to_rad(angles.pitch_deg));
    const double cb = std::cos(deg_to_rad(angles.yaw_deg));
    const double sb = std::sin(deg_to_rad(angles.yaw_deg));
    const double cg = std::cos(deg_to_rad(angles.roll_deg));
    const double sg = std::sin(deg_to_rad(angles.roll_deg));
    Mat3 r;
    r.m[0][0] = cg * cb; r.m[0][1] = cg * sb * sa - sg * ca; r.m[0][2] = cg * sb * ca + sg * sa;
    r.m[1][0] = sg * cb; r.m[1][1] = sg * sb * sa + cg * ca; r.m[1][2] = sg * sb * ca - cg * sa;
    r.m[2][0] = -sb;     r.m[2][1] = cb * sa;                r.m[2][2] = cb * ca;
    return r;
}

// Inverse of rotation_zyx; yaw is confined to [-90, 90] by the convention.
inline EulerAngles euler_zyx(const Mat3& r) {
    EulerAngles a;
    const double sb = -r.m[2][0];
    a.yaw_deg = rad_to_deg(std::asin(std::clamp(sb, -1.0, 1.0)));
    if (std::abs(sb) < 1.0 - 1e-12) {
        a.roll_deg = rad_to_deg(std::atan2(r.m[1][0], r.m[0][0]));
        a.pitch_deg = rad_to_deg(std::atan2(r.m[2][1], r.m[2][2]));
    } else {
        // Gimbal lock: roll and pitch share an axis; fold both into pitch.
        a.roll_deg = 0.0;
        a.pitch_deg = rad_to_deg(std::atan2(std::copysign(1.0, sb) * r.m[0][1], r.m[1][1]));
    }
    return a;
}

}  // namespace tripose
