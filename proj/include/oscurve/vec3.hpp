#pragma once

#include <cmath>
#include <limits>
#include <ostream>

#include "oscurve/real.hpp"

namespace oscurve {

/// Plain 3-vector in Cartesian coordinates.
struct Vec3 {
  real_t x = 0.0;
  real_t y = 0.0;
  real_t z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(real_t k) {
    x *= k;
    y *= k;
    z *= k;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, real_t k) { return a *= k; }
  friend constexpr Vec3 operator*(real_t k, Vec3 a) { return a *= k; }
  friend constexpr Vec3 operator/(const Vec3& a, real_t k) { return {a.x / k, a.y / k, a.z / k}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
  }
};

constexpr real_t dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline real_t norm(const Vec3& a) { return std::hypot(a.x, a.y, a.z); }

inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

inline bool is_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// Marker for frame vectors that are undefined at a sample.
inline constexpr Vec3 kUnsetVec3{std::numeric_limits<real_t>::quiet_NaN(),
                                 std::numeric_limits<real_t>::quiet_NaN(),
                                 std::numeric_limits<real_t>::quiet_NaN()};

// Lets the scalar and vector sample containers share one template path.
inline real_t abs_of(real_t v) { return std::fabs(v); }
inline real_t abs_of(const Vec3& v) { return norm(v); }

}  // namespace oscurve
