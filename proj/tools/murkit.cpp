// murkit CLI: compatibility checks, inaccuracy reports, optimal
// approximators, parameter sweeps, and finite-shot experiment simulation.
//
// All vector flags accept "x,z" (y = 0 inserted) or "x,y,z"; angles are
// degrees. Errors go to stderr as JSON {"error":{"code","message"}} with a
// stable code enum; exit code 0 iff the computation succeeded.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <murkit/murkit.hpp>

namespace {

using murkit::BinaryObservable;
using murkit::json;
using murkit::QubitState;
using murkit::Vec3;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) murkit::fail(murkit::errc::usage, "cannot open output file '" + out_path + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_json_format(const std::string& format) {
  if (format != "json")
    murkit::fail(murkit::errc::usage, "only the sweep subcommand supports --format csv");
}

json observable_report(const BinaryObservable& o) {
  return {{"bias", o.bias()}, {"vector", murkit::to_json(o.vector())}};
}

// Shared target/approximator selection: either explicit vectors --a --b --c
// --d (--c0/--d0 biases), or --theta with one of --gamma / --phi picking the
// corresponding parameterized family.
struct ProblemFlags {
  std::string a, b, c, d;
  double c0 = 1.0, d0 = 1.0;
  double theta = kUnset, gamma = kUnset, phi = kUnset;

  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
  static bool set(double flag) { return !std::isnan(flag); }

  void add_options(CLI::App* cmd) {
    cmd->add_option("--a", a, "target A direction (unit vector)");
    cmd->add_option("--b", b, "target B direction (unit vector)");
    cmd->add_option("--c", c, "approximator C vector");
    cmd->add_option("--d", d, "approximator D vector");
    cmd->add_option("--c0", c0, "bias of C (default 1, unbiased)");
    cmd->add_option("--d0", d0, "bias of D (default 1, unbiased)");
    cmd->add_option("--theta", theta, "target separation angle in degrees");
    cmd->add_option("--gamma", gamma, "gamma-family parameter in degrees");
    cmd->add_option("--phi", phi, "phi-family parameter in degrees");
  }

  struct Problem {
    BinaryObservable a, b, c, d;
  };

  Problem resolve() const {
    if (set(theta)) {
      if (set(gamma) == set(phi))
        murkit::fail(murkit::errc::usage, "--theta requires exactly one of --gamma or --phi");
      auto [ta, tb] = murkit::targets_from_theta(theta);
      auto [tc, td] = set(gamma) ? murkit::family_gamma(gamma) : murkit::family_phi(phi);
      return {ta, tb, tc, td};
    }
    if (set(gamma) || set(phi))
      murkit::fail(murkit::errc::usage, "--gamma/--phi require --theta");
    if (a.empty() || b.empty() || c.empty() || d.empty())
      murkit::fail(murkit::errc::usage, "provide --a --b --c --d, or --theta with --gamma/--phi");
    return {BinaryObservable::sharp(murkit::parse_vec3(a)),
            BinaryObservable::sharp(murkit::parse_vec3(b)),
            BinaryObservable(c0, murkit::parse_vec3(c)),
            BinaryObservable(d0, murkit::parse_vec3(d))};
  }
};

}  // namespace

int main(int argc, char** argv) {
  try {
    if (const char* env = std::getenv("MURKIT_TOLERANCE")) {
      char* end = nullptr;
      double tol = std::strtod(env, &end);
      if (end == env || *end != '\0' || !(tol > 0.0))
        murkit::fail(murkit::errc::usage, "MURKIT_TOLERANCE must be a positive number");
      murkit::set_validity_tolerance(tol);
    }

    CLI::App app{"qubit joint-measurement inaccuracy toolkit"};
    app.require_subcommand(1);

    // incompat
    auto* incompat = app.add_subcommand("incompat", "degree of incompatibility of two sharp targets");
    std::string in_a, in_b, in_format = "json", in_out;
    incompat->add_option("--a", in_a, "unit vector of A")->required();
    incompat->add_option("--b", in_b, "unit vector of B")->required();
    incompat->add_option("--format", in_format, "output format (json)");
    incompat->add_option("--out", in_out, "output path (default stdout)");
    incompat->callback([&] {
      require_json_format(in_format);
      double dlb = murkit::incompatibility_degree(murkit::parse_vec3(in_a), murkit::parse_vec3(in_b));
      emit(dump({{"delta_lb", dlb}}), in_out);
    });

    // compat-check
    auto* compat = app.add_subcommand("compat-check", "joint measurability of an approximator pair");
    std::string cc_c, cc_d, cc_format = "json", cc_out;
    double cc_c0 = 1.0, cc_d0 = 1.0;
    compat->add_option("--c", cc_c, "vector of C")->required();
    compat->add_option("--d", cc_d, "vector of D")->required();
    compat->add_option("--c0", cc_c0, "bias of C");
    compat->add_option("--d0", cc_d0, "bias of D");
    compat->add_option("--format", cc_format, "output format (json)");
    compat->add_option("--out", cc_out, "output path");
    compat->callback([&] {
      require_json_format(cc_format);
      BinaryObservable c(cc_c0, murkit::parse_vec3(cc_c));
      BinaryObservable d(cc_d0, murkit::parse_vec3(cc_d));
      auto sym = murkit::compatible_symmetrized(c, d);
      json out{{"compatible", sym.compatible}, {"min_eigenvalue", sym.min_eigenvalue}};
      if (c.is_unbiased() && d.is_unbiased())
        out["margin"] = murkit::compatible_unbiased(c.vector(), d.vector()).margin;
      emit(dump(out), cc_out);
    });

    // joint
    auto* joint = app.add_subcommand("joint", "symmetrized joint observable of C and D");
    std::string j_c, j_d, j_format = "json", j_out;
    double j_c0 = 1.0, j_d0 = 1.0;
    joint->add_option("--c", j_c, "vector of C")->required();
    joint->add_option("--d", j_d, "vector of D")->required();
    joint->add_option("--c0", j_c0, "bias of C");
    joint->add_option("--d0", j_d0, "bias of D");
    joint->add_option("--format", j_format, "output format (json)");
    joint->add_option("--out", j_out, "output path");
    joint->callback([&] {
      require_json_format(j_format);
      BinaryObservable c(j_c0, murkit::parse_vec3(j_c));
      BinaryObservable d(j_d0, murkit::parse_vec3(j_d));
      emit(dump(murkit::to_json(murkit::symmetrized_joint(c, d))), j_out);
    });

    // inaccuracy
    auto* inacc = app.add_subcommand("inaccuracy", "statistical-distance inaccuracy report");
    ProblemFlags inacc_flags;
    inacc_flags.add_options(inacc);
    std::string ia_state, ia_format = "json", ia_out;
    bool ia_worst = false;
    auto* ia_state_opt = inacc->add_option("--state", ia_state, "Bloch vector of the probe state");
    auto* ia_worst_opt = inacc->add_flag("--worst", ia_worst, "evaluate at the worst-case state");
    ia_state_opt->excludes(ia_worst_opt);
    inacc->add_option("--format", ia_format, "output format (json)");
    inacc->add_option("--out", ia_out, "output path");
    inacc->callback([&] {
      require_json_format(ia_format);
      if (!ia_worst && ia_state.empty())
        murkit::fail(murkit::errc::usage, "provide --state or --worst");
      auto p = inacc_flags.resolve();
      murkit::InaccuracyReport report = [&] {
        if (ia_worst) {
          auto ws = murkit::worst_case_state(p.a, p.b, p.c, p.d);
          auto rep = murkit::combined_inaccuracy(p.a, p.b, p.c, p.d, ws.state);
          rep.delta_worst = murkit::worst_case_inaccuracy(p.a, p.b, p.c, p.d);
          rep.degenerate = ws.degenerate;
          return rep;
        }
        return murkit::combined_inaccuracy(p.a, p.b, p.c, p.d, QubitState(murkit::parse_vec3(ia_state)));
      }();
      emit(dump(murkit::to_json(report)), ia_out);
    });

    // optimal
    auto* optimal = app.add_subcommand("optimal", "optimal compatible approximators of sharp targets");
    std::string op_a, op_b, op_format = "json", op_out;
    double op_theta = ProblemFlags::kUnset;
    optimal->add_option("--a", op_a, "unit vector of A");
    optimal->add_option("--b", op_b, "unit vector of B");
    optimal->add_option("--theta", op_theta, "target separation angle in degrees");
    optimal->add_option("--format", op_format, "output format (json)");
    optimal->add_option("--out", op_out, "output path");
    optimal->callback([&] {
      require_json_format(op_format);
      auto [a, b] = [&] {
        if (ProblemFlags::set(op_theta)) {
          if (!op_a.empty() || !op_b.empty())
            murkit::fail(murkit::errc::usage, "use either --theta or --a/--b, not both");
          return murkit::targets_from_theta(op_theta);
        }
        if (op_a.empty() || op_b.empty())
          murkit::fail(murkit::errc::usage, "provide --a and --b, or --theta");
        return std::make_pair(BinaryObservable::sharp(murkit::parse_vec3(op_a)),
                              BinaryObservable::sharp(murkit::parse_vec3(op_b)));
      }();
      auto [c, d] = murkit::optimal_approximators(a, b);
      double delta = murkit::worst_case_inaccuracy(a, b, c, d);
      double dlb = murkit::incompatibility_degree(a.vector(), b.vector());
      auto margin = murkit::compatible_unbiased(c.vector(), d.vector()).margin;
      json out{{"c", observable_report(c)},
               {"d", observable_report(d)},
               {"delta", delta},
               {"delta_lb", dlb},
               {"compat_margin", margin}};
      if (dlb == 0.0) out["note"] = "collinear targets: approximators equal the targets";
      try {
        out["circuit"] = murkit::to_json(murkit::solve_circuit_params(c, d));
      } catch (const murkit::Error& e) {
        out["circuit"] = nullptr;
        out["circuit_error"] = e.what();
      }
      emit(dump(out), op_out);
    });

    // sweep
    auto* sweep = app.add_subcommand("sweep", "inaccuracy curve over a family parameter");
    std::string sw_family, sw_format = "json", sw_out;
    double sw_theta = 90.0;
    std::size_t sw_steps = 91, sw_grid = 100000;
    sweep->add_option("--family", sw_family, "fig3 (gamma family) or fig4 (phi family)")->required();
    sweep->add_option("--theta", sw_theta, "target separation angle in degrees");
    sweep->add_option("--steps", sw_steps, "number of parameter values");
    sweep->add_option("--grid-points", sw_grid, "brute-force lattice size (0 disables the column)");
    sweep->add_option("--format", sw_format, "json or csv");
    sweep->add_option("--out", sw_out, "output path");
    sweep->callback([&] {
      murkit::SweepFamily family;
      if (sw_family == "fig3" || sw_family == "gamma")
        family = murkit::SweepFamily::gamma_scan;
      else if (sw_family == "fig4" || sw_family == "phi")
        family = murkit::SweepFamily::phi_scan;
      else
        murkit::fail(murkit::errc::usage, "--family must be fig3 or fig4 (aliases: gamma, phi)");
      murkit::SweepSpec spec = murkit::default_sweep(family, sw_theta);
      spec.steps = sw_steps;
      spec.grid_points = sw_grid;
      auto result = murkit::run_sweep(spec);
      if (sw_format == "csv") {
        std::ostringstream os;
        murkit::write_sweep_csv(result, os);
        emit(os.str(), sw_out);
      } else if (sw_format == "json") {
        emit(dump(murkit::to_json(result)), sw_out);
      } else {
        murkit::fail(murkit::errc::usage, "--format must be json or csv");
      }
    });

    // simulate
    auto* simulate = app.add_subcommand("simulate", "finite-shot joint-measurement experiment");
    ProblemFlags sim_flags;
    sim_flags.add_options(simulate);
    std::string sm_state, sm_format = "json", sm_out;
    bool sm_worst = false, sm_direct = false;
    std::uint64_t sm_shots = 0, sm_seed = 0;
    auto* sm_state_opt = simulate->add_option("--state", sm_state, "Bloch vector of the probe state");
    auto* sm_worst_opt = simulate->add_flag("--worst", sm_worst, "use the worst-case state (default)");
    sm_state_opt->excludes(sm_worst_opt);
    simulate->add_option("--shots", sm_shots, "shots per measurement")->required();
    simulate->add_option("--seed", sm_seed, "RNG seed");
    simulate->add_flag("--direct-povm", sm_direct,
                       "sample the symmetrized joint directly (general compatible pairs)");
    simulate->add_option("--format", sm_format, "output format (json)");
    simulate->add_option("--out", sm_out, "output path");
    simulate->callback([&] {
      require_json_format(sm_format);
      auto p = sim_flags.resolve();
      QubitState state = sm_state.empty()
                             ? murkit::worst_case_state(p.a, p.b, p.c, p.d).state
                             : QubitState(murkit::parse_vec3(sm_state));
      auto report = murkit::run_experiment(p.a, p.b, p.c, p.d, state, sm_shots, sm_seed, sm_direct);
      emit(dump(murkit::to_json(report)), sm_out);
    });

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      json err{{"error", {{"code", "usage"}, {"message", e.what()}}}};
      std::cerr << err.dump() << "\n";
      return 2;
    }
    return 0;
  } catch (const murkit::Error& e) {
    json err{{"error", {{"code", murkit::errc_name(e.code())}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err{{"error", {{"code", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
}
