// Text parsing and serialization for the CLI surface: vector literals,
// JSON report conversion, and the sweep CSV schema.
#pragma once

#include <charconv>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "murkit/angles.hpp"
#include "murkit/approximation.hpp"
#include "murkit/dilation.hpp"
#include "murkit/inaccuracy.hpp"
#include "murkit/sampling.hpp"

namespace murkit {

using json = nlohmann::json;

/// Parses "x,z" (y = 0 inserted) or "x,y,z", comma-separated decimals.
inline Vec3 parse_vec3(std::string_view text) {
  std::vector<double> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    // trim spaces
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || ptr != item.data() + item.size())
      fail(errc::invalid_vector, "cannot parse vector component '" + std::string(item) + "'");
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (parts.size() == 2) return {parts[0], 0.0, parts[1]};
  if (parts.size() == 3) return {parts[0], parts[1], parts[2]};
  fail(errc::invalid_vector, "expected 2 or 3 comma-separated components, got " + std::to_string(parts.size()));
}

inline json to_json(Vec3 v) { return json::array({v.x, v.y, v.z}); }

inline json to_json(const Effect& e) {
  return {{"weight", e.weight}, {"vector", to_json(e.vector)}};
}

inline json to_json(const JointObservable& m) {
  json effects = json::array();
  for (int i = 0; i < 4; ++i) {
    effects.push_back({{"label", kJointLabels[i]},
                       {"weight", m.effects[i].weight},
                       {"vector", to_json(m.effects[i].vector)}});
  }
  return {{"effects", effects}, {"valid", m.valid}, {"min_eigenvalue", m.min_eigenvalue}};
}

inline json to_json(const InaccuracyReport& r) {
  json out{{"delta_AC", r.delta_ac},
           {"delta_BD", r.delta_bd},
           {"delta_rho", r.delta_rho},
           {"delta_lb", r.delta_lb},
           {"state", to_json(r.state.bloch())},
           {"degenerate", r.degenerate}};
  if (r.delta_worst) out["delta_worst"] = *r.delta_worst;
  return out;
}

inline json to_json(const CircuitParams& p) {
  AxisAngle r = p.r.axis_angle();
  AxisAngle f = p.frame.axis_angle();
  return {{"omega_weight", p.omega_weight},
          {"R_axis", to_json(r.axis)},
          {"R_angle_deg", rad_to_deg(r.angle)},
          {"frame_axis", to_json(f.axis)},
          {"frame_angle_deg", rad_to_deg(f.angle)}};
}

inline json to_json(const ShotRecord& rec) {
  return {{"labels", rec.labels},
          {"counts", rec.counts},
          {"shots", rec.shots},
          {"seed", rec.seed},
          {"probabilities_exact", rec.probabilities_exact},
          {"infinite_shots", rec.infinite_shots}};
}

inline json observable_json(const BinaryObservable& o) {
  return {{"bias", o.bias()}, {"vector", to_json(o.vector())}};
}

inline json to_json(const ExperimentReport& r) {
  return {{"config",
           {{"A", observable_json(r.a)},
            {"B", observable_json(r.b)},
            {"C", observable_json(r.c)},
            {"D", observable_json(r.d)},
            {"state", to_json(r.state.bloch())},
            {"shots", r.shots},
            {"direct_povm", r.direct_povm},
            {"ideal", r.ideal}}},
          {"counts",
           {{"joint", r.joint_counts.counts}, {"A", r.a_counts.counts}, {"B", r.b_counts.counts}}},
          {"estimates",
           {{"delta_AC", r.est_delta_ac},
            {"delta_BD", r.est_delta_bd},
            {"delta_rho", r.est_delta_rho},
            {"stderr_delta_AC", r.se_delta_ac},
            {"stderr_delta_BD", r.se_delta_bd},
            {"stderr_delta_rho", r.se_delta_rho}}},
          {"exact",
           {{"delta_AC", r.exact_delta_ac},
            {"delta_BD", r.exact_delta_bd},
            {"delta_rho", r.exact_delta_rho}}},
          {"delta_lb", r.delta_lb},
          {"seed", r.seed},
          {"generator", r.generator}};
}

inline json to_json(const SweepResult& s) {
  json rows = json::array();
  for (const SweepRow& r : s.rows) {
    rows.push_back({{"param_deg", r.param_deg},
                    {"delta_analytic", r.delta_analytic},
                    {"delta_bruteforce", r.delta_bruteforce},
                    {"delta_lb", r.delta_lb},
                    {"compat_margin", r.compat_margin}});
  }
  return {{"family", sweep_family_token(s.spec.family)},
          {"theta_deg", s.spec.theta_deg},
          {"steps", s.spec.steps},
          {"grid_points", s.spec.grid_points},
          {"rows", rows}};
}

/// Shortest exact decimal form (round-trips bit-exactly, always >= full
/// precision of the value; locale-independent, "." separator).
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

/// CSV schema: header row, LF line endings.
inline void write_sweep_csv(const SweepResult& s, std::ostream& os) {
  os << "param_deg,delta_analytic,delta_bruteforce,delta_lb,compat_margin\n";
  for (const SweepRow& r : s.rows) {
    os << format_double(r.param_deg) << ',' << format_double(r.delta_analytic) << ','
       << format_double(r.delta_bruteforce) << ',' << format_double(r.delta_lb) << ','
       << format_double(r.compat_margin) << '\n';
  }
}

}  // namespace murkit
