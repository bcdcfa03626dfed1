// Joint measurability of two-outcome qubit observables.
//
// The joint observable used throughout is the symmetrized product
// M_ij = (C_i D_j + D_j C_i)/2, whose marginals reproduce C and D as an exact
// linear identity. The pair is certified compatible when all four effects of
// M are positive; for unbiased pairs this is equivalent to the margin
// criterion 2 - |c+d| - |c-d| >= 0.
#pragma once

#include <array>
#include <limits>

#include "murkit/qubit.hpp"

namespace murkit {

// Outcome order ++, +-, -+, -- (first index C, second D).
inline constexpr std::array<const char*, 4> kJointLabels = {"++", "+-", "-+", "--"};

struct JointObservable {
  std::array<Effect, 4> effects{};
  BinaryObservable from_c;  // provenance
  BinaryObservable from_d;
  bool valid = false;
  double min_eigenvalue = 0.0;  // smallest eigenvalue across the four effects

  Effect marginal_c_plus() const { return effects[0] + effects[1]; }
  Effect marginal_c_minus() const { return effects[2] + effects[3]; }
  Effect marginal_d_plus() const { return effects[0] + effects[2]; }
  Effect marginal_d_minus() const { return effects[1] + effects[3]; }
};

/// Symmetrized joint observable in Pauli coefficients:
///   M_ij = ((t_i s_j + w_i.x_j)/2, (t_i x_j + s_j w_i)/2)
/// for C_i = (t_i, w_i), D_j = (s_j, x_j). Never throws: an incompatible pair
/// yields valid = false with the offending eigenvalue in min_eigenvalue,
/// since sweeps intentionally probe the incompatible region.
inline JointObservable symmetrized_joint(const BinaryObservable& c, const BinaryObservable& d,
                                         double tol = validity_tolerance()) {
  const Effect ce[2] = {c.plus(), c.minus()};
  const Effect de[2] = {d.plus(), d.minus()};
  JointObservable out{{}, c, d, true, std::numeric_limits<double>::infinity()};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double t = 0.5 * (ce[i].weight * de[j].weight + dot(ce[i].vector, de[j].vector));
      Vec3 w = 0.5 * (ce[i].weight * de[j].vector + de[j].weight * ce[i].vector);
      Effect m{t, w};
      out.effects[2 * i + j] = m;
      auto eig = effect_eigen(m);
      if (eig.lambda_minus < out.min_eigenvalue) out.min_eigenvalue = eig.lambda_minus;
      if (!effect_is_valid(m, tol).valid) out.valid = false;
    }
  return out;
}

struct CompatibilityResult {
  bool compatible = false;
  double margin = 0.0;  // 2 - |c+d| - |c-d|, signed so boundary cases are visible
};

/// Compatibility criterion for unbiased observables (c0 = d0 = 1).
inline CompatibilityResult compatible_unbiased(Vec3 c, Vec3 d, double tol = validity_tolerance()) {
  if (norm(c) > 1.0 + tol || norm(d) > 1.0 + tol)
    fail(errc::invalid_vector, "unbiased observable vectors must lie in the unit ball");
  double margin = 2.0 - norm(c + d) - norm(c - d);
  return {margin >= -tol, margin};
}

struct SymmetrizedCompatibility {
  bool compatible = false;
  double min_eigenvalue = 0.0;
};

/// Joint measurability via positivity of the symmetrized joint observable.
/// Works for any bias; agrees with compatible_unbiased on unbiased pairs.
inline SymmetrizedCompatibility compatible_symmetrized(const BinaryObservable& c, const BinaryObservable& d,
                                                       double tol = validity_tolerance()) {
  JointObservable j = symmetrized_joint(c, d, tol);
  return {j.valid, j.min_eigenvalue};
}

/// Degree of incompatibility of sharp target directions:
/// |a+b| + |a-b| - 2, nonnegative, zero iff a and b are collinear.
inline double incompatibility_degree(Vec3 a, Vec3 b) {
  require_unit(a, "incompatibility_degree");
  require_unit(b, "incompatibility_degree");
  return std::max(0.0, norm(a + b) + norm(a - b) - 2.0);
}

}  // namespace murkit
