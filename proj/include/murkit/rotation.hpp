// Proper rotations acting on Bloch vectors.
#pragma once

#include <array>
#include <cmath>

#include "murkit/angles.hpp"
#include "murkit/vec3.hpp"

namespace murkit {

struct AxisAngle {
  Vec3 axis;     // unit
  double angle;  // radians, in [0, pi]
};

class Rotation {
 public:
  Rotation() : m_{{1, 0, 0, 0, 1, 0, 0, 0, 1}} {}

  static Rotation identity() { return {}; }

  static Rotation from_axis_angle(Vec3 axis, double angle) {
    Vec3 n = normalized(axis);
    double c = std::cos(angle), s = std::sin(angle), k = 1.0 - c;
    Rotation r;
    r.m_ = {{c + n.x * n.x * k, n.x * n.y * k - n.z * s, n.x * n.z * k + n.y * s,
             n.y * n.x * k + n.z * s, c + n.y * n.y * k, n.y * n.z * k - n.x * s,
             n.z * n.x * k - n.y * s, n.z * n.y * k + n.x * s, c + n.z * n.z * k}};
    return r;
  }

  static Rotation from_rows(Vec3 r0, Vec3 r1, Vec3 r2) {
    Rotation r;
    r.m_ = {{r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z}};
    return r;
  }

  Vec3 operator()(Vec3 v) const {
    return {m_[0] * v.x + m_[1] * v.y + m_[2] * v.z,
            m_[3] * v.x + m_[4] * v.y + m_[5] * v.z,
            m_[6] * v.x + m_[7] * v.y + m_[8] * v.z};
  }

  Rotation transposed() const {
    Rotation r;
    r.m_ = {{m_[0], m_[3], m_[6], m_[1], m_[4], m_[7], m_[2], m_[5], m_[8]}};
    return r;
  }

  Rotation operator*(const Rotation& o) const {
    Rotation r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += m_[3 * i + k] * o.m_[3 * k + j];
        r.m_[3 * i + j] = s;
      }
    return r;
  }

  double at(int row, int col) const { return m_[3 * row + col]; }
  double trace() const { return m_[0] + m_[4] + m_[8]; }

  double determinant() const {
    return m_[0] * (m_[4] * m_[8] - m_[5] * m_[7]) - m_[1] * (m_[3] * m_[8] - m_[5] * m_[6]) +
           m_[2] * (m_[3] * m_[7] - m_[4] * m_[6]);
  }

  /// Axis-angle decomposition with angle in [0, pi]; the axis of the identity
  /// rotation is reported as +z by convention.
  AxisAngle axis_angle() const {
    Vec3 w{m_[7] - m_[5], m_[2] - m_[6], m_[3] - m_[1]};
    double s = 0.5 * norm(w);
    double c = 0.5 * (trace() - 1.0);
    double angle = std::atan2(s, c);
    if (s > 1e-9) return {(1.0 / (2.0 * s)) * w, angle};
    if (c > 0.0) return {{0, 0, 1}, 0.0};
    // angle ~ pi: recover the axis from the symmetric part, largest diagonal first
    double dx = m_[0], dy = m_[4], dz = m_[8];
    Vec3 axis;
    if (dx >= dy && dx >= dz) {
      double ax = std::sqrt(std::max(0.0, (dx + 1.0) / 2.0));
      axis = {ax, m_[1] / (2.0 * ax), m_[2] / (2.0 * ax)};
    } else if (dy >= dz) {
      double ay = std::sqrt(std::max(0.0, (dy + 1.0) / 2.0));
      axis = {m_[1] / (2.0 * ay), ay, m_[5] / (2.0 * ay)};
    } else {
      double az = std::sqrt(std::max(0.0, (dz + 1.0) / 2.0));
      axis = {m_[2] / (2.0 * az), m_[5] / (2.0 * az), az};
    }
    return {normalized(axis), kPi};
  }

 private:
  std::array<double, 9> m_;
};

namespace detail {

// Coordinate axis least aligned with u, projected into u's orthogonal plane.
// Deterministic: ties keep the earlier of x, y, z.
inline Vec3 perpendicular_axis(Vec3 u) {
  Vec3 candidates[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  int best = 0;
  double best_align = std::abs(u.x);
  double align[3] = {std::abs(u.x), std::abs(u.y), std::abs(u.z)};
  for (int i = 1; i < 3; ++i)
    if (align[i] < best_align) {
      best = i;
      best_align = align[i];
    }
  Vec3 e = candidates[best];
  return normalized(e - dot(e, u) * u);
}

// Rodrigues form about u x v; requires dot(u, v) away from -1.
inline Rotation rotation_between_generic(Vec3 u, Vec3 v, double c) {
  Vec3 k = cross(u, v);
  double f = 1.0 / (1.0 + c);
  Rotation skew = Rotation::from_rows({0, -k.z, k.y}, {k.z, 0, -k.x}, {-k.y, k.x, 0});
  Rotation skew2 = skew * skew;
  Rotation out = Rotation::from_rows(
      {1 + skew.at(0, 0) + f * skew2.at(0, 0), skew.at(0, 1) + f * skew2.at(0, 1), skew.at(0, 2) + f * skew2.at(0, 2)},
      {skew.at(1, 0) + f * skew2.at(1, 0), 1 + skew.at(1, 1) + f * skew2.at(1, 1), skew.at(1, 2) + f * skew2.at(1, 2)},
      {skew.at(2, 0) + f * skew2.at(2, 0), skew.at(2, 1) + f * skew2.at(2, 1), 1 + skew.at(2, 2) + f * skew2.at(2, 2)});
  return out;
}

}  // namespace detail

/// Proper rotation R with R u = v, rotating about u x v. Antipodal u, v
/// rotate by pi about a deterministic perpendicular axis (the coordinate axis
/// least aligned with u, projected); near-antipodal input composes that flip
/// with a small correction, keeping the 1/(1+c) Rodrigues factor well
/// conditioned so the map stays exact to 1e-12.
inline Rotation rotation_between(Vec3 u, Vec3 v) {
  u = normalized(require_unit(u, "rotation_between"));
  v = normalized(require_unit(v, "rotation_between"));
  double c = dot(u, v);
  if (c < -0.99) {
    // flip u across a perpendicular axis, then apply the small remaining
    // correction; the correction is near-identity, where the Rodrigues form
    // is well conditioned (exactly antipodal input leaves it the identity)
    Rotation flip = Rotation::from_axis_angle(detail::perpendicular_axis(u), kPi);
    Vec3 mu = -u;
    return detail::rotation_between_generic(mu, v, dot(mu, v)) * flip;
  }
  return detail::rotation_between_generic(u, v, c);
}

}  // namespace murkit
