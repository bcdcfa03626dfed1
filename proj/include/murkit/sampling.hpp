// Finite-shot simulation of the measurement statistics: seeded multinomial
// sampling, empirical statistical distances with uncertainty estimates, and
// the full joint-vs-projective experiment protocol.
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "murkit/dilation.hpp"
#include "murkit/inaccuracy.hpp"
#include "murkit/rng.hpp"

namespace murkit {

struct ShotRecord {
  std::vector<std::string> labels;
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<double> probabilities_exact;  // provenance
  bool infinite_shots = false;              // carries exact probabilities, no noise

  std::vector<double> frequencies() const {
    if (infinite_shots) return probabilities_exact;
    std::vector<double> f(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
      f[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
    return f;
  }

  /// Noise-free record standing in for the infinite-shot limit.
  static ShotRecord exact(std::vector<std::string> labels, std::vector<double> probabilities) {
    ShotRecord rec;
    rec.labels = std::move(labels);
    rec.counts.assign(rec.labels.size(), 0);
    rec.probabilities_exact = std::move(probabilities);
    rec.infinite_shots = true;
    return rec;
  }
};

/// Multinomial draw from a seeded xoshiro256++ stream via per-shot inverse
/// CDF. Probabilities may carry tolerance-level negatives (clamped) and must
/// sum to 1 within 1e-9 (then renormalized); identical inputs and seed give
/// identical counts.
inline ShotRecord sample_counts(const std::vector<double>& probabilities, std::uint64_t shots,
                                std::uint64_t seed, std::vector<std::string> labels = {}) {
  if (probabilities.empty()) fail(errc::invalid_probability, "empty probability vector");
  if (shots < 1) fail(errc::out_of_range, "shots must be at least 1");

  std::vector<double> p = probabilities;
  double sum = 0.0;
  for (double& v : p) {
    if (v < -1e-9) fail(errc::invalid_probability, "negative probability " + std::to_string(v));
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    fail(errc::invalid_probability, "probabilities sum to " + std::to_string(sum));
  for (double& v : p) v /= sum;

  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;

  ShotRecord rec;
  rec.labels = labels.empty() ? [&] {
    std::vector<std::string> def(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) def[i] = std::to_string(i);
    return def;
  }()
                              : std::move(labels);
  if (rec.labels.size() != p.size())
    fail(errc::label_mismatch, "label count does not match probability count");
  rec.counts.assign(p.size(), 0);
  rec.shots = shots;
  rec.seed = seed;
  rec.probabilities_exact = probabilities;

  Xoshiro256pp gen(seed);
  for (std::uint64_t n = 0; n < shots; ++n) {
    double u = gen.next_double();
    std::size_t k = 0;
    while (k + 1 < cdf.size() && u >= cdf[k]) ++k;
    ++rec.counts[k];
  }
  return rec;
}

struct EmpiricalDistance {
  double delta = 0.0;
  double standard_error = 0.0;
};

/// Empirical statistical distance between two binary records:
///   delta_hat = 2 sum_i |p_hat_i - q_hat_i| = 4 |p_hat_+ - q_hat_+|.
/// Standard error by binomial propagation through that linear form: each
/// outcome contributes the same deviation |p_hat_+ - q_hat_+|, so the overall
/// factor is 4 and
///   se = 4 sqrt( p_hat(1-p_hat)/N_p + q_hat(1-q_hat)/N_q ),
/// with an infinite-shot record contributing zero variance.
inline EmpiricalDistance empirical_distance(const ShotRecord& rec_a, const ShotRecord& rec_c) {
  if (rec_a.labels.size() != 2 || rec_a.labels != rec_c.labels)
    fail(errc::label_mismatch, "records must share one binary label set");
  std::vector<double> p = rec_a.frequencies(), q = rec_c.frequencies();
  double delta = 2.0 * (std::abs(p[0] - q[0]) + std::abs(p[1] - q[1]));
  auto variance = [](const ShotRecord& r, double f) {
    if (r.infinite_shots) return 0.0;
    return f * (1.0 - f) / static_cast<double>(r.shots);
  };
  double se = 4.0 * std::sqrt(variance(rec_a, p[0]) + variance(rec_c, q[0]));
  return {delta, se};
}

struct ExperimentReport {
  BinaryObservable a, b, c, d;
  QubitState state;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  bool direct_povm = false;
  bool ideal = true;  // no decoherence model is applied
  std::string generator = Xoshiro256pp::name();

  ShotRecord joint_counts;
  ShotRecord c_marginal;  // row sums of joint_counts
  ShotRecord d_marginal;  // column sums of joint_counts
  ShotRecord a_counts;
  ShotRecord b_counts;

  double est_delta_ac = 0.0, est_delta_bd = 0.0, est_delta_rho = 0.0;
  double se_delta_ac = 0.0, se_delta_bd = 0.0, se_delta_rho = 0.0;
  double exact_delta_ac = 0.0, exact_delta_bd = 0.0, exact_delta_rho = 0.0;
  double delta_lb = 0.0;
};

namespace detail {

inline ShotRecord marginal_record(const ShotRecord& joint, bool rows) {
  ShotRecord rec;
  rec.labels = {"+", "-"};
  if (rows)
    rec.counts = {joint.counts[0] + joint.counts[1], joint.counts[2] + joint.counts[3]};
  else
    rec.counts = {joint.counts[0] + joint.counts[2], joint.counts[1] + joint.counts[3]};
  rec.shots = joint.shots;
  rec.seed = joint.seed;
  const auto& pe = joint.probabilities_exact;
  rec.probabilities_exact = rows ? std::vector<double>{pe[0] + pe[1], pe[2] + pe[3]}
                                 : std::vector<double>{pe[0] + pe[2], pe[1] + pe[3]};
  return rec;
}

}  // namespace detail

/// Full protocol: measure the joint observable of (C, D) once (one dataset,
/// marginalized for both observables), measure A and B projectively, and
/// compare the outcome distributions. The joint observable is realized
/// through the circuit solver unless direct_povm is set, in which case the
/// symmetrized joint is sampled directly (general compatible pairs).
inline ExperimentReport run_experiment(const BinaryObservable& a, const BinaryObservable& b,
                                       const BinaryObservable& c, const BinaryObservable& d,
                                       const QubitState& s, std::uint64_t shots, std::uint64_t seed,
                                       bool direct_povm = false) {
  if (shots < 1) fail(errc::out_of_range, "shots must be at least 1");
  if (!a.is_sharp() || !b.is_sharp())
    fail(errc::non_sharp_observable, "target observables must be sharp");

  JointObservable m = direct_povm ? symmetrized_joint(c, d) : assemble_povm(solve_circuit_params(c, d));
  if (!m.valid) fail(errc::incompatible_pair, "joint observable is not positive; pair incompatible");

  auto pj = joint_probabilities(m, s);
  auto pa = projective_probabilities(a, s);
  auto pb = projective_probabilities(b, s);

  SplitMix64 streams(seed);
  std::uint64_t seed_joint = streams.next(), seed_a = streams.next(), seed_b = streams.next();

  ExperimentReport rep{a, b, c, d, s};
  rep.shots = shots;
  rep.seed = seed;
  rep.direct_povm = direct_povm;
  rep.joint_counts = sample_counts({pj[0], pj[1], pj[2], pj[3]}, shots, seed_joint,
                                   {kJointLabels[0], kJointLabels[1], kJointLabels[2], kJointLabels[3]});
  rep.c_marginal = detail::marginal_record(rep.joint_counts, /*rows=*/true);
  rep.d_marginal = detail::marginal_record(rep.joint_counts, /*rows=*/false);
  rep.a_counts = sample_counts({pa.p_plus, pa.p_minus}, shots, seed_a, {"+", "-"});
  rep.b_counts = sample_counts({pb.p_plus, pb.p_minus}, shots, seed_b, {"+", "-"});

  auto ac = empirical_distance(rep.a_counts, rep.c_marginal);
  auto bd = empirical_distance(rep.b_counts, rep.d_marginal);
  rep.est_delta_ac = ac.delta;
  rep.est_delta_bd = bd.delta;
  rep.est_delta_rho = ac.delta + bd.delta;
  rep.se_delta_ac = ac.standard_error;
  rep.se_delta_bd = bd.standard_error;
  // A/B streams are independent; the shared joint dataset couples the two
  // marginal estimates only weakly, so the quadrature sum is reported
  rep.se_delta_rho = std::sqrt(ac.standard_error * ac.standard_error +
                               bd.standard_error * bd.standard_error);

  rep.exact_delta_ac = statistical_distance(a, c, s);
  rep.exact_delta_bd = statistical_distance(b, d, s);
  rep.exact_delta_rho = rep.exact_delta_ac + rep.exact_delta_bd;
  rep.delta_lb = incompatibility_degree(a.vector(), b.vector());
  return rep;
}

}  // namespace murkit
