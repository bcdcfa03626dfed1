// Qubit states, effects, and two-outcome observables in Pauli coefficients.
//
// An effect (t, w) is the operator (t*1 + w.sigma)/2 with eigenvalues
// (t ± |w|)/2; it is a valid effect iff |w| <= min{t, 2-t}. Everything in the
// main pipeline stays in this coefficient form; dense matrices are produced
// only on demand (see dense.hpp).
#pragma once

#include <cmath>

#include "murkit/error.hpp"
#include "murkit/tolerance.hpp"
#include "murkit/vec3.hpp"

namespace murkit {

struct Effect {
  double weight = 0.0;  // t
  Vec3 vector{};        // w

  Effect() = default;
  Effect(double t, Vec3 w) : weight(t), vector(w) {
    if (!std::isfinite(t)) fail(errc::invalid_effect, "effect weight must be finite");
  }
};

// Coefficient sum; the result may violate positivity (checked separately).
inline Effect operator+(const Effect& a, const Effect& b) {
  return {a.weight + b.weight, a.vector + b.vector};
}

struct ValidityResult {
  bool valid = false;
  double margin = 0.0;  // min{t, 2-t} - |w|, negative when invalid
};

inline ValidityResult effect_is_valid(double t, Vec3 w, double tol = validity_tolerance()) {
  double margin = std::min(t, 2.0 - t) - norm(w);
  return {margin >= -tol, margin};
}

inline ValidityResult effect_is_valid(const Effect& e, double tol = validity_tolerance()) {
  return effect_is_valid(e.weight, e.vector, tol);
}

struct EffectEigen {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  Vec3 axis{};              // unit when defined
  bool axis_defined = false;  // false for isotropic effects (|w| below tol)
};

inline EffectEigen effect_eigen(const Effect& e, double tol = validity_tolerance()) {
  double n = norm(e.vector);
  EffectEigen out;
  out.lambda_plus = 0.5 * (e.weight + n);
  out.lambda_minus = 0.5 * (e.weight - n);
  out.axis_defined = n >= tol;
  if (out.axis_defined) out.axis = (1.0 / n) * e.vector;
  return out;
}

/// Two-outcome observable +1 -> (b0*1 + v.sigma)/2, -1 -> ((2-b0)*1 - v.sigma)/2.
///
/// Stored as the signed bias offset b0 - 1 so that bias differences telescope
/// without rounding (statistical distances of matched pairs cancel exactly).
class BinaryObservable {
 public:
  BinaryObservable(double bias, Vec3 v) : BinaryObservable(bias - 1.0, v, offset_tag{}) {}

  static BinaryObservable from_bias_offset(double offset, Vec3 v) {
    return BinaryObservable(offset, v, offset_tag{});
  }

  /// Projective observable along a unit direction (input rejected, not normalized).
  static BinaryObservable sharp(Vec3 direction) {
    return BinaryObservable(0.0, require_unit(direction, "BinaryObservable::sharp"), offset_tag{});
  }

  static BinaryObservable unbiased(Vec3 v) { return BinaryObservable(0.0, v, offset_tag{}); }

  /// Outcome-independent of the state direction; compatible with everything.
  static BinaryObservable trivial(double bias) { return BinaryObservable(bias - 1.0, Vec3{}, offset_tag{}); }

  double bias() const { return 1.0 + offset_; }
  double bias_offset() const { return offset_; }
  Vec3 vector() const { return vec_; }

  Effect plus() const { return {1.0 + offset_, vec_}; }
  Effect minus() const { return {1.0 - offset_, -vec_}; }

  bool is_sharp(double tol = validity_tolerance()) const {
    return std::abs(offset_) <= tol && is_unit(vec_, tol);
  }
  bool is_unbiased(double tol = validity_tolerance()) const { return std::abs(offset_) <= tol; }

 private:
  struct offset_tag {};
  BinaryObservable(double offset, Vec3 v, offset_tag) : offset_(offset), vec_(v) {
    if (!std::isfinite(offset)) fail(errc::invalid_effect, "observable bias must be finite");
    double margin = (1.0 - std::abs(offset)) - norm(vec_);
    if (margin < -validity_tolerance())
      fail(errc::invalid_effect, "observable effects are not positive: margin = " + std::to_string(margin));
  }

  double offset_;  // b0 - 1, in [-1, 1]
  Vec3 vec_;
};

class QubitState {
 public:
  explicit QubitState(Vec3 r) : r_(r) {
    if (norm(r) > 1.0 + validity_tolerance())
      fail(errc::invalid_state, "Bloch vector must lie in the unit ball, |r| = " + std::to_string(norm(r)));
  }

  static QubitState pure(Vec3 direction) { return QubitState(require_unit(direction, "QubitState::pure")); }
  static QubitState maximally_mixed() { return QubitState(Vec3{}); }

  Vec3 bloch() const { return r_; }
  bool is_pure(double tol = validity_tolerance()) const { return is_unit(r_, tol); }

 private:
  Vec3 r_;
};

struct OutcomeProbabilities {
  double p_plus = 0.0;
  double p_minus = 0.0;
};

// p+ = (b0 + r.v)/2; p- defined as 1 - p+ so the pair always sums to 1.
inline OutcomeProbabilities outcome_probabilities(const BinaryObservable& o, const QubitState& s) {
  double p = 0.5 * (o.bias() + dot(s.bloch(), o.vector()));
  return {p, 1.0 - p};
}

}  // namespace murkit
