// Dense 2x2 complex matrices, produced on demand for export and for the
// dilation cross-checks; the main pipeline stays in Pauli coefficients.
#pragma once

#include <array>
#include <complex>

#include "murkit/qubit.hpp"
#include "murkit/rotation.hpp"

namespace murkit {

using Complex = std::complex<double>;
using Matrix2c = std::array<Complex, 4>;  // row-major

// (t*1 + w.sigma)/2
inline Matrix2c to_matrix(const Effect& e) {
  double t = e.weight;
  Vec3 w = e.vector;
  return {Complex(0.5 * (t + w.z), 0.0), Complex(0.5 * w.x, -0.5 * w.y),
          Complex(0.5 * w.x, 0.5 * w.y), Complex(0.5 * (t - w.z), 0.0)};
}

// rho = (1 + r.sigma)/2
inline Matrix2c to_matrix(const QubitState& s) { return to_matrix(Effect{1.0, s.bloch()}); }

/// SU(2) element of a Bloch rotation: cos(angle/2) 1 - i sin(angle/2) n.sigma,
/// satisfying U (m.sigma) U^dag = (R m).sigma for R = rotation(n, angle).
inline Matrix2c su2(const AxisAngle& aa) {
  double h = 0.5 * aa.angle;
  double c = std::cos(h), s = std::sin(h);
  Vec3 n = aa.axis;
  return {Complex(c, -s * n.z), Complex(-s * n.y, -s * n.x),
          Complex(s * n.y, -s * n.x), Complex(c, s * n.z)};
}

inline Matrix2c su2(const Rotation& r) { return su2(r.axis_angle()); }

}  // namespace murkit
