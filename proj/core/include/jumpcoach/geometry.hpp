#pragma once

#include <cmath>

namespace jumpcoach {

/// World frame: meters, right-handed, y up. x points to the player's right,
/// the player faces -z, so "forward" distances are measured along -z.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;

  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
  friend Vec3 operator*(double s, Vec3 a) { return a * s; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
};

/// Horizontal (floor-plane) coordinates: x lateral, z depth.
struct Vec2 {
  double x = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.z - b.z}; }
  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.z + b.z}; }
  friend Vec2 operator*(const Vec2& a, double s) { return {a.x * s, a.z * s}; }

  double norm() const { return std::hypot(x, z); }
};

inline Vec2 horizontal(const Vec3& v) { return {v.x, v.z}; }

/// Distance in front of `origin` (positive toward the approaching content).
inline double forwardOf(const Vec3& p, const Vec2& origin) { return origin.z - p.z; }
inline double lateralOf(const Vec3& p, const Vec2& origin) { return p.x - origin.x; }

}  // namespace jumpcoach
