// Circuit-level realization of rank-1 joint observables: an ancilla weight
// plus two Bloch rotations induce the four-outcome POVM whose outcomes are
// weighted projectors along ±z and ±(R^-1 z) in a rotated frame.
#pragma once

#include <algorithm>
#include <array>
#include <string>

#include "murkit/compatibility.hpp"
#include "murkit/rotation.hpp"

namespace murkit {

struct CircuitParams {
  double omega_weight = 1.0;  // |<-|omega>|^2, weight of the z-aligned outcome pair
  Rotation r;                 // maps the in-frame c-d direction to +z
  Rotation frame;             // aligns c+d with +z
};

inline constexpr double kRankOneTol = 1e-9;

/// POVM induced by the circuit parameters. In the rotated frame
///   M_++ = q P(+z), M_-- = q P(-z), M_+- = (1-q) P(R^-1 z), M_-+ mirrored,
/// with q = omega_weight and P(n) the projector along n; the whole set is then
/// conjugated back through the frame. Always a valid joint observable with
/// unbiased marginals.
inline JointObservable assemble_povm(const CircuitParams& p) {
  double q = p.omega_weight;
  if (!(q >= 0.0 && q <= 1.0)) fail(errc::out_of_range, "omega_weight must lie in [0, 1]");

  Vec3 zhat{0.0, 0.0, 1.0};
  Vec3 m = p.r.transposed()(zhat);
  Rotation back = p.frame.transposed();
  Vec3 axis_sum = back(zhat);
  Vec3 axis_diff = back(m);

  JointObservable out{{Effect{q, q * axis_sum}, Effect{1.0 - q, (1.0 - q) * axis_diff},
                       Effect{1.0 - q, -(1.0 - q) * axis_diff}, Effect{q, -q * axis_sum}},
                      BinaryObservable::trivial(1.0), BinaryObservable::trivial(1.0), true, 0.0};

  // marginals recorded from the assembled coefficients; weights sum to 1 exactly
  Effect cp = out.marginal_c_plus();
  Effect dp = out.marginal_d_plus();
  out.from_c = BinaryObservable(cp.weight, cp.vector);
  out.from_d = BinaryObservable(dp.weight, dp.vector);

  double min_eig = 1.0;
  for (const Effect& e : out.effects) {
    min_eig = std::min(min_eig, effect_eigen(e).lambda_minus);
    if (!effect_is_valid(e).valid) out.valid = false;
  }
  out.min_eigenvalue = min_eig;
  return out;
}

/// Solves the circuit parameters reproducing the symmetrized joint of a
/// boundary-compatible unbiased pair: frame aligns c+d with +z,
/// omega_weight = (1 + c.d)/2, and R maps the frame image of c-d to +z.
/// Biased pairs, interior-compatible pairs (some joint effect of rank 2), and
/// incompatible pairs are rejected with distinct error codes.
inline CircuitParams solve_circuit_params(const BinaryObservable& c_obs, const BinaryObservable& d_obs,
                                          double tol = validity_tolerance()) {
  if (!c_obs.is_unbiased(tol) || !d_obs.is_unbiased(tol))
    fail(errc::biased_unsupported, "circuit form requires unbiased observables (c0 = d0 = 1)");
  Vec3 c = c_obs.vector(), d = d_obs.vector();

  auto compat = compatible_unbiased(c, d, tol);
  if (!compat.compatible)
    fail(errc::incompatible_pair, "pair is incompatible: margin = " + std::to_string(compat.margin));

  JointObservable joint = symmetrized_joint(c_obs, d_obs, tol);
  double max_small_eig = 0.0;
  for (const Effect& e : joint.effects)
    max_small_eig = std::max(max_small_eig, effect_eigen(e).lambda_minus);
  if (max_small_eig > kRankOneTol)
    fail(errc::not_rank_one,
         "joint observable is not rank-1 (smallest eigenvalue " + std::to_string(max_small_eig) +
             "); pair is compatible but off the boundary, not representable in circuit form");

  CircuitParams params;
  params.omega_weight = std::clamp(0.5 * (1.0 + dot(c, d)), 0.0, 1.0);

  Vec3 sum = c + d, diff = c - d;
  params.frame = norm(sum) < kRankOneTol ? Rotation::identity()
                                         : rotation_between(normalized(sum), {0, 0, 1});
  params.r = norm(diff) < kRankOneTol
                 ? Rotation::identity()
                 : rotation_between(params.frame(normalized(diff)), {0, 0, 1});
  return params;
}

/// Reference-measurement arm: projective statistics of a sharp observable.
/// Identical to outcome_probabilities, but rejects non-sharp input.
inline OutcomeProbabilities projective_probabilities(const BinaryObservable& o, const QubitState& s) {
  if (!o.is_sharp()) fail(errc::non_sharp_observable, "projective measurement requires a sharp observable");
  return outcome_probabilities(o, s);
}

/// Outcome distribution of a four-outcome joint observable, ordered ++, +-,
/// -+, --; marginal sums reproduce the outcome probabilities of C and D.
inline std::array<double, 4> joint_probabilities(const JointObservable& m, const QubitState& s) {
  if (!m.valid) fail(errc::invalid_effect, "joint observable is not positive");
  std::array<double, 4> p{};
  for (int i = 0; i < 4; ++i)
    p[i] = 0.5 * (m.effects[i].weight + dot(s.bloch(), m.effects[i].vector));
  return p;
}

}  // namespace murkit
