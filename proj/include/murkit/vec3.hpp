// Real 3-vectors: Bloch vectors of states, observables, and effects.
#pragma once

#include <cmath>
#include <string>

#include "murkit/error.hpp"
#include "murkit/tolerance.hpp"

namespace murkit {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
      fail(errc::invalid_vector, "vector components must be finite");
  }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm_squared(Vec3 a) { return dot(a, a); }
inline double norm(Vec3 a) { return std::sqrt(norm_squared(a)); }

inline Vec3 normalized(Vec3 a) {
  double n = norm(a);
  if (n < kLinAlgTol) fail(errc::zero_vector, "cannot normalize a near-zero vector");
  return (1.0 / n) * a;
}

inline bool is_unit(Vec3 a, double tol = validity_tolerance()) {
  return std::abs(norm(a) - 1.0) <= tol;
}

// Operations on sharp directions reject non-unit input instead of normalizing.
inline Vec3 require_unit(Vec3 a, const char* who) {
  if (!is_unit(a)) fail(errc::non_unit_vector, std::string(who) + ": expected a unit vector, |v| = " + std::to_string(norm(a)));
  return a;
}

}  // namespace murkit
