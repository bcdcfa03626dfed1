// Parameterized approximator families, the optimal (bound-attaining) chord
// construction, and parameter sweeps producing the theoretical curves.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "murkit/angles.hpp"
#include "murkit/inaccuracy.hpp"

namespace murkit {

/// Sharp targets in the xz-plane, symmetric about +z and separated by theta:
/// a = (-sin(theta/2), 0, cos(theta/2)), b mirrored.
inline std::pair<BinaryObservable, BinaryObservable> targets_from_theta(double theta_deg) {
  if (!(theta_deg >= 0.0 && theta_deg <= 180.0))
    fail(errc::out_of_range, "theta must be in [0, 180] degrees");
  double h = deg_to_rad(theta_deg) / 2.0;
  double s = std::sin(h), k = std::cos(h);
  return {BinaryObservable::sharp({-s, 0.0, k}), BinaryObservable::sharp({s, 0.0, k})};
}

/// Unbiased pair c = (-sin g cos g, 0, sin^2 g), d = (sin g cos g, 0, cos^2 g).
/// c and d are orthogonal with |c|^2 + |d|^2 = 1 (endpoints on the circle of
/// diameter z), so the pair sits on the compatibility boundary for every
/// gamma = arctan(|c|/|d|).
inline std::pair<BinaryObservable, BinaryObservable> family_gamma(double gamma_deg) {
  if (!(gamma_deg >= 0.0 && gamma_deg <= 90.0))
    fail(errc::out_of_range, "gamma must be in [0, 90] degrees");
  double g = deg_to_rad(gamma_deg);
  double sg = std::sin(g), cg = std::cos(g);
  Vec3 c{-sg * cg, 0.0, sg * sg};
  Vec3 d{sg * cg, 0.0, cg * cg};
  return {BinaryObservable::unbiased(c), BinaryObservable::unbiased(d)};
}

/// Unbiased pair c = (-u', 0, v'), d = (u', 0, v') with u' = 1/(1+cot(phi/2)),
/// v' = 1/(1+tan(phi/2)), so u' + v' = 1 and the pair is boundary-compatible;
/// phi is the angle between c and d. Evaluated as sin/(sin+cos) so the
/// endpoint singularities of cot/tan become the analytic limits.
inline std::pair<BinaryObservable, BinaryObservable> family_phi(double phi_deg) {
  if (!(phi_deg >= 0.0 && phi_deg <= 180.0))
    fail(errc::out_of_range, "phi must be in [0, 180] degrees");
  double h = deg_to_rad(phi_deg) / 2.0;
  double s = std::sin(h), k = std::cos(h);
  double up = s / (s + k);
  double vp = k / (s + k);
  Vec3 c{-up, 0.0, vp};
  Vec3 d{up, 0.0, vp};
  return {BinaryObservable::unbiased(c), BinaryObservable::unbiased(d)};
}

/// Optimal compatible approximators of sharp targets: in the frame where a, b
/// straddle +z, the legs of the inscribed isosceles right triangle run from
/// +z to ±x, and c, d are the perpendicular feet of a, b on their adjacent
/// legs. With s = sin(theta/2), k = cos(theta/2) the feet are
/// (∓(1+s-k)/2, 0, (1-s+k)/2); the construction attains
/// Delta = 2(s+k-1) = Delta_lb. Collinear targets return (A, B) themselves.
inline std::pair<BinaryObservable, BinaryObservable> optimal_approximators(
    const BinaryObservable& a_obs, const BinaryObservable& b_obs) {
  if (!a_obs.is_sharp() || !b_obs.is_sharp())
    fail(errc::non_sharp_observable, "optimal approximators require sharp targets");
  Vec3 a = a_obs.vector(), b = b_obs.vector();
  double sum_n = norm(a + b), diff_n = norm(a - b);
  if (sum_n < kLinAlgTol || diff_n < kLinAlgTol) return {a_obs, b_obs};

  double s = diff_n / 2.0, k = sum_n / 2.0;
  Vec3 bisector = (1.0 / sum_n) * (a + b);        // frame +z
  Vec3 across = (1.0 / diff_n) * (b - a);         // frame +x
  double foot_x = (1.0 + s - k) / 2.0;
  double foot_z = (1.0 - s + k) / 2.0;
  Vec3 c = (-foot_x) * across + foot_z * bisector;
  Vec3 d = foot_x * across + foot_z * bisector;
  return {BinaryObservable::unbiased(c), BinaryObservable::unbiased(d)};
}

enum class SweepFamily { gamma_scan, phi_scan };

inline const char* sweep_family_token(SweepFamily f) {
  return f == SweepFamily::gamma_scan ? "fig3" : "fig4";
}

struct SweepSpec {
  SweepFamily family = SweepFamily::gamma_scan;
  double theta_deg = 90.0;
  double lo_deg = 0.0;
  double hi_deg = 90.0;
  std::size_t steps = 91;
  std::size_t grid_points = 100000;  // 0 disables the brute-force column
};

inline SweepSpec default_sweep(SweepFamily family, double theta_deg) {
  SweepSpec spec;
  spec.family = family;
  spec.theta_deg = theta_deg;
  spec.hi_deg = family == SweepFamily::gamma_scan ? 90.0 : 180.0;
  return spec;
}

struct SweepRow {
  double param_deg = 0.0;
  double delta_analytic = 0.0;
  double delta_bruteforce = 0.0;  // NaN when the oracle column is disabled
  double delta_lb = 0.0;
  double compat_margin = 0.0;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
};

inline SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.steps < 2) fail(errc::out_of_range, "sweep needs at least 2 steps");
  if (!(spec.lo_deg < spec.hi_deg)) fail(errc::out_of_range, "sweep range must satisfy lo < hi");

  auto [a, b] = targets_from_theta(spec.theta_deg);
  double delta_lb = incompatibility_degree(a.vector(), b.vector());

  SweepResult result{spec, {}};
  result.rows.reserve(spec.steps);
  for (std::size_t i = 0; i < spec.steps; ++i) {
    double p = spec.lo_deg + (spec.hi_deg - spec.lo_deg) * static_cast<double>(i) /
                                 static_cast<double>(spec.steps - 1);
    auto [c, d] = spec.family == SweepFamily::gamma_scan ? family_gamma(p) : family_phi(p);
    SweepRow row;
    row.param_deg = p;
    row.delta_analytic = worst_case_inaccuracy(a, b, c, d);
    row.delta_bruteforce = spec.grid_points == 0
                               ? std::numeric_limits<double>::quiet_NaN()
                               : worst_case_bruteforce(a, b, c, d, spec.grid_points);
    row.delta_lb = delta_lb;
    row.compat_margin = compatible_unbiased(c.vector(), d.vector()).margin;
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace murkit
