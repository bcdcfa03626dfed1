// Statistical distance between outcome distributions, the combined
// state-dependent inaccuracy of a joint approximation, and its worst case
// over states (closed form plus an independent lattice oracle).
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>

#include "murkit/angles.hpp"
#include "murkit/compatibility.hpp"
#include "murkit/qubit.hpp"
#include "murkit/rotation.hpp"

namespace murkit {

/// 2 * sum_i |p_i(O1) - p_i(O2)| on the state s, which reduces to
/// 2|b1 - b2 + r.(v1 - v2)| in Pauli coefficients.
inline double statistical_distance(const BinaryObservable& o1, const BinaryObservable& o2,
                                   const QubitState& s) {
  return 2.0 * std::abs(o1.bias_offset() - o2.bias_offset() + dot(s.bloch(), o1.vector() - o2.vector()));
}

namespace detail {

// Deviation of the approximating pair from sharp targets:
// alpha = 1 - c0, beta = 1 - d0 (as exact offset differences), u = a - c,
// v = b - d. The combined inaccuracy at r is 2|alpha + r.u| + 2|beta + r.v|.
struct DeviationTerms {
  double alpha = 0.0;
  double beta = 0.0;
  Vec3 u{};
  Vec3 v{};
};

inline DeviationTerms deviation_terms(const BinaryObservable& a, const BinaryObservable& b,
                                      const BinaryObservable& c, const BinaryObservable& d) {
  if (!a.is_sharp() || !b.is_sharp())
    fail(errc::non_sharp_observable, "target observables must be sharp");
  return {a.bias_offset() - c.bias_offset(), b.bias_offset() - d.bias_offset(),
          a.vector() - c.vector(), b.vector() - d.vector()};
}

inline double combined_at(const DeviationTerms& t, Vec3 r) {
  return 2.0 * (std::abs(t.alpha + dot(r, t.u)) + std::abs(t.beta + dot(r, t.v)));
}

}  // namespace detail

struct InaccuracyReport {
  double delta_ac = 0.0;
  double delta_bd = 0.0;
  double delta_rho = 0.0;
  QubitState state = QubitState::maximally_mixed();
  std::optional<double> delta_worst;
  double delta_lb = 0.0;
  bool degenerate = false;
};

inline InaccuracyReport combined_inaccuracy(const BinaryObservable& a, const BinaryObservable& b,
                                            const BinaryObservable& c, const BinaryObservable& d,
                                            const QubitState& s) {
  if (!a.is_sharp() || !b.is_sharp())
    fail(errc::non_sharp_observable, "target observables must be sharp");
  InaccuracyReport rep;
  rep.delta_ac = statistical_distance(a, c, s);
  rep.delta_bd = statistical_distance(b, d, s);
  rep.delta_rho = rep.delta_ac + rep.delta_bd;
  rep.state = s;
  rep.delta_lb = incompatibility_degree(a.vector(), b.vector());
  return rep;
}

struct WorstCaseState {
  QubitState state;
  bool degenerate = false;  // inaccuracy is state-independent; any state attains it
};

/// Pure state maximizing the combined inaccuracy. The maximum splits into two
/// branches |alpha±beta| + |u±v|; the winner's direction is ±(u±v) normalized,
/// signed like its bias term (+ when the bias term vanishes). Near-ties
/// resolve toward the u+v branch.
inline WorstCaseState worst_case_state(const BinaryObservable& a, const BinaryObservable& b,
                                       const BinaryObservable& c, const BinaryObservable& d) {
  auto t = detail::deviation_terms(a, b, c, d);
  double branch_plus = std::abs(t.alpha + t.beta) + norm(t.u + t.v);
  double branch_minus = std::abs(t.alpha - t.beta) + norm(t.u - t.v);
  bool plus = branch_plus >= branch_minus - 1e-13;

  Vec3 dir = plus ? t.u + t.v : t.u - t.v;
  double bias_term = plus ? t.alpha + t.beta : t.alpha - t.beta;
  if (norm(dir) < kLinAlgTol) {
    // winning branch is direction-free; fall back to the other branch, which
    // any maximizer of that branch also attains
    Vec3 other = plus ? t.u - t.v : t.u + t.v;
    double other_bias = plus ? t.alpha - t.beta : t.alpha + t.beta;
    if (norm(other) < kLinAlgTol) return {QubitState::pure({0, 0, 1}), true};
    dir = other;
    bias_term = other_bias;
  }
  double sign = bias_term < 0.0 ? -1.0 : 1.0;
  return {QubitState::pure(sign * normalized(dir)), false};
}

/// Closed-form worst-case inaccuracy
///   Delta = 2 max(|alpha+beta| + |u+v|, |alpha-beta| + |u-v|),
/// an exact maximization over the Bloch ball (sign splitting of the two
/// absolute values plus Cauchy-Schwarz); equals the combined inaccuracy
/// evaluated at worst_case_state.
inline double worst_case_inaccuracy(const BinaryObservable& a, const BinaryObservable& b,
                                    const BinaryObservable& c, const BinaryObservable& d) {
  auto t = detail::deviation_terms(a, b, c, d);
  return 2.0 * std::max(std::abs(t.alpha + t.beta) + norm(t.u + t.v),
                        std::abs(t.alpha - t.beta) + norm(t.u - t.v));
}

/// i-th of n points of the deterministic Fibonacci lattice on the unit sphere.
inline Vec3 fibonacci_direction(std::size_t i, std::size_t n) {
  double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
  double phi = kPi * (3.0 - std::sqrt(5.0)) * static_cast<double>(i);
  return {rad * std::cos(phi), rad * std::sin(phi), z};
}

/// Independent oracle for worst_case_inaccuracy: scans a Fibonacci lattice of
/// pure states (ties keep the smallest lattice index), then refines with
/// shrinking local angular grids around the incumbent (factor 10 per level).
/// Never exceeds the true maximum; within 1e-4 of it at the default grid.
inline double worst_case_bruteforce(const BinaryObservable& a, const BinaryObservable& b,
                                    const BinaryObservable& c, const BinaryObservable& d,
                                    std::size_t grid_points = 100000, int refine_levels = 2) {
  if (grid_points < 1000) fail(errc::out_of_range, "grid_points must be at least 1000");
  auto t = detail::deviation_terms(a, b, c, d);

  double best = -1.0;
  Vec3 best_dir{0, 0, 1};
  for (std::size_t i = 0; i < grid_points; ++i) {
    Vec3 r = fibonacci_direction(i, grid_points);
    double val = detail::combined_at(t, r);
    if (val > best) {
      best = val;
      best_dir = r;
    }
  }

  double half_width = 5.0 / std::sqrt(static_cast<double>(grid_points));
  constexpr int kSteps = 10;  // (2*kSteps+1)^2 probes per level
  for (int level = 0; level < refine_levels; ++level) {
    Vec3 t1 = detail::perpendicular_axis(best_dir);
    Vec3 t2 = cross(best_dir, t1);
    Vec3 center = best_dir;
    for (int i = -kSteps; i <= kSteps; ++i)
      for (int j = -kSteps; j <= kSteps; ++j) {
        double du = half_width * static_cast<double>(i) / kSteps;
        double dv = half_width * static_cast<double>(j) / kSteps;
        Vec3 r = normalized(center + du * t1 + dv * t2);
        double val = detail::combined_at(t, r);
        if (val > best) {
          best = val;
          best_dir = r;
        }
      }
    half_width *= 0.1;
  }
  return best;
}

/// Compatible pair with vanishing combined inaccuracy on the given state:
/// C = A and D trivial with bias 1 + r.b, so both distances cancel exactly.
inline std::pair<BinaryObservable, BinaryObservable> zero_inaccuracy_approximators(
    const BinaryObservable& a, const BinaryObservable& b, const QubitState& s) {
  if (!a.is_sharp() || !b.is_sharp())
    fail(errc::non_sharp_observable, "target observables must be sharp");
  BinaryObservable d = BinaryObservable::from_bias_offset(dot(s.bloch(), b.vector()), Vec3{});
  return {a, d};
}

}  // namespace murkit
