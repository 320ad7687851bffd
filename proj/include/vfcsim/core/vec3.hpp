#pragma once

#include <cmath>

namespace vfc {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double norm() const { return std::sqrt(x * x + y * y + z * z); }

    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

/// Euclidean 3-D distance between two points.
inline double distance_3d(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

inline double distance_2d(const Vec2& a, const Vec2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace vfc
