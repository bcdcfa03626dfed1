#include <array>
#include <complex>

#include "helpers.hpp"

using namespace murkit;
using Catch::Matchers::WithinAbs;
using testutil::check_close;
using testutil::expect_error;
using testutil::Rng;

namespace {

// Minimal dense 4x4 machinery for the dilation cross-check.
using Vec4 = std::array<Complex, 4>;
using Mat4 = std::array<Complex, 16>;

Vec4 kron_vec(const std::array<Complex, 2>& sys, const std::array<Complex, 2>& anc) {
  // system-major index 2s + a
  return {sys[0] * anc[0], sys[0] * anc[1], sys[1] * anc[0], sys[1] * anc[1]};
}

Mat4 outer(const Vec4& v) {
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[4 * i + j] = v[i] * std::conj(v[j]);
  return m;
}

Mat4 kron_identity_with(const Matrix2c& anc_op) {
  Mat4 m{};
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap) m[4 * (2 * s + a) + (2 * s + ap)] = anc_op[2 * a + ap];
  return m;
}

Mat4 mul(const Mat4& x, const Mat4& y) {
  Mat4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += x[4 * i + k] * y[4 * k + j];
      m[4 * i + j] = acc;
    }
  return m;
}

Matrix2c partial_trace_ancilla(const Mat4& x) {
  Matrix2c m{};
  for (int s = 0; s < 2; ++s)
    for (int sp = 0; sp < 2; ++sp) {
      Complex acc = 0.0;
      for (int a = 0; a < 2; ++a) acc += x[4 * (2 * s + a) + (2 * sp + a)];
      m[2 * s + sp] = acc;
    }
  return m;
}

std::array<Complex, 2> apply2_dagger(const Matrix2c& u, const std::array<Complex, 2>& v) {
  // u^dag v
  return {std::conj(u[0]) * v[0] + std::conj(u[2]) * v[1],
          std::conj(u[1]) * v[0] + std::conj(u[3]) * v[1]};
}

void check_matrix_close(const Matrix2c& a, const Matrix2c& b, double tol) {
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(a[i].real() - b[i].real()) <= tol);
    CHECK(std::abs(a[i].imag() - b[i].imag()) <= tol);
  }
}

}  // namespace

TEST_CASE("assemble_povm produces the expected marginals", "[dilation]") {
  SECTION("half weight with R mapping -x to z") {
    CircuitParams p;
    p.omega_weight = 0.5;
    p.r = rotation_between({-1, 0, 0}, {0, 0, 1});
    auto m = assemble_povm(p);
    CHECK(m.valid);
    check_close(m.from_c.vector(), {-0.5, 0, 0.5}, 1e-12);
    check_close(m.from_d.vector(), {0.5, 0, 0.5}, 1e-12);
    CHECK(m.from_c.bias() == 1.0);
    CHECK(m.from_d.bias() == 1.0);
  }

  SECTION("unit weight collapses the rotated outcomes") {
    CircuitParams p;
    p.omega_weight = 1.0;
    p.r = rotation_between({0, 1, 0}, {0, 0, 1});
    auto m = assemble_povm(p);
    CHECK(m.effects[1].weight == 0.0);
    CHECK(m.effects[2].weight == 0.0);
    check_close(m.from_c.vector(), {0, 0, 1}, 1e-15);
    check_close(m.from_d.vector(), {0, 0, 1}, 1e-15);
  }

  SECTION("zero weight puts everything in the rotated pair") {
    CircuitParams p;
    p.omega_weight = 0.0;
    auto m = assemble_povm(p);
    check_close(m.from_c.vector(), {0, 0, 1}, 1e-15);
    check_close(m.from_d.vector(), {0, 0, -1}, 1e-15);
  }

  SECTION("weight outside [0,1] is rejected") {
    CircuitParams p;
    p.omega_weight = 1.2;
    CHECK(expect_error([&] { assemble_povm(p); }) == errc::out_of_range);
  }
}

TEST_CASE("solve_circuit_params on the parameterized families", "[dilation]") {
  SECTION("gamma = 45: equal weights, frame is trivial") {
    auto [c, d] = family_gamma(45.0);
    auto p = solve_circuit_params(c, d);
    CHECK_THAT(p.omega_weight, WithinAbs(0.5, 1e-12));
    check_close(p.frame({0.2, -0.4, 0.7}), {0.2, -0.4, 0.7}, 1e-12);
    check_close(p.r({-1, 0, 0}), {0, 0, 1}, 1e-12);
  }

  SECTION("phi = 60 weight") {
    auto [c, d] = family_phi(60.0);
    auto p = solve_circuit_params(c, d);
    CHECK_THAT(p.omega_weight, WithinAbs(1.0 / (1.0 + std::tan(kPi / 6.0)), 1e-12));
  }

  SECTION("biased pairs are rejected") {
    auto c = BinaryObservable(1.2, Vec3{0.1, 0, 0});
    auto d = BinaryObservable::unbiased({0, 0, 0.3});
    CHECK(expect_error([&] { solve_circuit_params(c, d); }) == errc::biased_unsupported);
  }

  SECTION("interior compatible pairs are rejected as rank-2") {
    auto c = BinaryObservable::unbiased({0.3, 0, 0});
    auto d = BinaryObservable::unbiased({0, 0, 0.3});
    CHECK(compatible_unbiased(c.vector(), d.vector()).compatible);
    CHECK(expect_error([&] { solve_circuit_params(c, d); }) == errc::not_rank_one);
  }

  SECTION("incompatible pairs report the negative margin") {
    auto c = BinaryObservable::unbiased({0.9, 0, 0});
    auto d = BinaryObservable::unbiased({0, 0.9, 0});
    try {
      solve_circuit_params(c, d);
      FAIL("expected incompatible_pair");
    } catch (const Error& e) {
      CHECK(e.code() == errc::incompatible_pair);
      CHECK(std::string(e.what()).find("-0.5") != std::string::npos);
    }
  }
}

TEST_CASE("round trip reproduces the symmetrized joint", "[dilation][property]") {
  auto check_round_trip = [](const BinaryObservable& c, const BinaryObservable& d) {
    auto reference = symmetrized_joint(c, d);
    auto rebuilt = assemble_povm(solve_circuit_params(c, d));
    for (int i = 0; i < 4; ++i) check_close(rebuilt.effects[i], reference.effects[i], 1e-10);
  };

  for (int k = 0; k <= 18; ++k) {
    auto [cg, dg] = family_gamma(90.0 * k / 18.0);
    check_round_trip(cg, dg);
    auto [cp, dp] = family_phi(180.0 * k / 18.0);
    check_round_trip(cp, dp);
  }

  Rng rng(61);
  for (int iter = 0; iter < 300; ++iter) {
    // random boundary pairs come from random circuit parameters
    CircuitParams p;
    p.omega_weight = rng.uniform();
    p.r = rng.rotation();
    p.frame = rng.rotation();
    auto m = assemble_povm(p);
    check_round_trip(m.from_c, m.from_d);
  }
}

TEST_CASE("boundary pairs are exactly the rank-1 ones", "[dilation][property]") {
  Rng rng(62);
  for (int iter = 0; iter < 300; ++iter) {
    CircuitParams p;
    p.omega_weight = rng.uniform();
    p.r = rng.rotation();
    p.frame = rng.rotation();
    auto m = assemble_povm(p);
    Vec3 c = m.from_c.vector(), d = m.from_d.vector();

    double boundary_residual = std::abs(norm(c + d) + norm(c - d) - 2.0);
    CHECK(boundary_residual <= 1e-12);
    for (const auto& e : m.effects) CHECK(effect_eigen(e).lambda_minus <= 1e-12);

    // trace accounting: the four weights sum to 2 exactly
    Effect total = m.effects[0] + m.effects[1] + m.effects[2] + m.effects[3];
    CHECK(total.weight == 2.0);

    // pull the pair strictly inside: it stops being rank-1 and solve rejects it
    Vec3 ci = 0.8 * c, di = 0.8 * d;
    auto interior = symmetrized_joint(BinaryObservable::unbiased(ci), BinaryObservable::unbiased(di));
    double max_small = 0.0;
    for (const auto& e : interior.effects)
      max_small = std::max(max_small, effect_eigen(e).lambda_minus);
    if (max_small > 1e-6) {
      CHECK(expect_error([&] {
              solve_circuit_params(BinaryObservable::unbiased(ci), BinaryObservable::unbiased(di));
            }) == errc::not_rank_one);
    }
  }
}

TEST_CASE("projective probabilities mirror the reference arm", "[dilation]") {
  auto a = BinaryObservable::sharp({-1.0 / std::sqrt(2.0), 0, 1.0 / std::sqrt(2.0)});
  auto p = projective_probabilities(a, QubitState::pure({0, 0, 1}));
  CHECK_THAT(p.p_plus, WithinAbs(0.8535533905932737, 1e-12));
  CHECK_THAT(p.p_minus, WithinAbs(0.1464466094067263, 1e-12));

  auto b = BinaryObservable::sharp({1.0 / std::sqrt(2.0), 0, 1.0 / std::sqrt(2.0)});
  auto pb = projective_probabilities(b, QubitState::pure({1, 0, 0}));
  CHECK_THAT(pb.p_plus, WithinAbs(0.8535533905932737, 1e-12));

  auto z = BinaryObservable::sharp({0, 0, 1});
  CHECK(projective_probabilities(z, QubitState::pure({0, 0, 1})).p_plus == 1.0);

  CHECK(expect_error([&] {
          projective_probabilities(BinaryObservable::unbiased({0.5, 0, 0}),
                                   QubitState::maximally_mixed());
        }) == errc::non_sharp_observable);
}

TEST_CASE("joint probabilities", "[dilation]") {
  auto [c, d] = family_gamma(45.0);
  auto m = symmetrized_joint(c, d);

  auto pz = joint_probabilities(m, QubitState::pure({0, 0, 1}));
  CHECK_THAT(pz[0], WithinAbs(0.5, 1e-12));
  CHECK_THAT(pz[1], WithinAbs(0.25, 1e-12));
  CHECK_THAT(pz[2], WithinAbs(0.25, 1e-12));
  CHECK_THAT(pz[3], WithinAbs(0.0, 1e-12));

  auto pm = joint_probabilities(m, QubitState::maximally_mixed());
  for (int i = 0; i < 4; ++i) CHECK(pm[i] == 0.5 * m.effects[i].weight);

  CircuitParams cp;
  cp.omega_weight = 1.0;
  auto m1 = assemble_povm(cp);
  auto p1 = joint_probabilities(m1, QubitState::pure({0.6, 0, 0.8}));
  CHECK(p1[1] == 0.0);
  CHECK(p1[2] == 0.0);

  auto bad = symmetrized_joint(BinaryObservable::unbiased({0.9, 0, 0}),
                               BinaryObservable::unbiased({0, 0.9, 0}));
  CHECK(expect_error([&] { joint_probabilities(bad, QubitState::maximally_mixed()); }) ==
        errc::invalid_effect);
}

TEST_CASE("marginalization commutes with probabilities", "[dilation][property]") {
  // exact as an operator identity; the two float evaluation orders agree to
  // a couple of ulps
  Rng rng(63);
  int checked = 0;
  while (checked < 500) {
    auto c = rng.random_observable();
    auto d = rng.random_observable();
    auto m = symmetrized_joint(c, d);
    if (!m.valid) continue;
    ++checked;
    auto s = rng.random_mixed();
    auto pj = joint_probabilities(m, s);
    auto pc = outcome_probabilities(c, s);
    auto pd = outcome_probabilities(d, s);
    CHECK(std::abs(pj[0] + pj[1] - pc.p_plus) <= 1e-15);
    CHECK(std::abs(pj[2] + pj[3] - pc.p_minus) <= 1e-15);
    CHECK(std::abs(pj[0] + pj[2] - pd.p_plus) <= 1e-15);
    CHECK(std::abs(pj[1] + pj[3] - pd.p_minus) <= 1e-15);
    CHECK_THAT(pj[0] + pj[1] + pj[2] + pj[3], WithinAbs(1.0, 1e-15));
  }
}

TEST_CASE("su2 conversion realizes the Bloch rotation", "[dilation][dense]") {
  Rng rng(64);
  for (int iter = 0; iter < 200; ++iter) {
    Rotation r = rng.rotation();
    Matrix2c u = su2(r);
    Vec3 m = rng.unit_vec();
    // U (m.sigma) U^dag should equal (R m).sigma; compare via the effect map
    Matrix2c pauli_m = to_matrix(Effect{0.0, 2.0 * m});  // m.sigma
    Matrix2c lhs{};
    // lhs = u * pauli_m * u^dag
    Matrix2c tmp{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Complex acc = 0.0;
        for (int k = 0; k < 2; ++k) acc += u[2 * i + k] * pauli_m[2 * k + j];
        tmp[2 * i + j] = acc;
      }
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Complex acc = 0.0;
        for (int k = 0; k < 2; ++k) acc += tmp[2 * i + k] * std::conj(u[2 * j + k]);
        lhs[2 * i + j] = acc;
      }
    Matrix2c rhs = to_matrix(Effect{0.0, 2.0 * r(m)});
    check_matrix_close(lhs, rhs, 1e-12);
  }
}

TEST_CASE("dense dilation cross-check", "[dilation][dense]") {
  // Realize the POVM as a projective measurement on system + ancilla: basis
  // chi_++ = |+>|->, chi_-- = |->|->, chi_+- = (V^dag|+>)|+>, chi_-+ =
  // (V^dag|->)|+>, ancilla prepared in omega with |<-|omega>|^2 = q.
  // Partial-tracing the basis projectors against omega must reproduce the
  // Bloch-level assembly in the measurement frame.
  Rng rng(65);
  for (int iter = 0; iter < 50; ++iter) {
    CircuitParams p;
    p.omega_weight = (iter == 0) ? 0.5 : rng.uniform();
    p.r = (iter == 0) ? rotation_between({-1, 0, 0}, {0, 0, 1}) : rng.rotation();
    // dense check works in the measurement frame
    p.frame = Rotation::identity();
    auto m = assemble_povm(p);

    double q = p.omega_weight;
    std::array<Complex, 2> omega{std::sqrt(1.0 - q), std::sqrt(q)};
    std::array<Complex, 2> e_plus{1.0, 0.0}, e_minus{0.0, 1.0};
    Matrix2c v = su2(p.r);

    std::array<Vec4, 4> chi{
        kron_vec(e_plus, e_minus),                  // ++
        kron_vec(apply2_dagger(v, e_plus), e_plus),  // +-
        kron_vec(apply2_dagger(v, e_minus), e_plus), // -+
        kron_vec(e_minus, e_minus),                 // --
    };

    // orthonormal measurement basis
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Complex ip = 0.0;
        for (int k = 0; k < 4; ++k) ip += std::conj(chi[i][k]) * chi[j][k];
        CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) <= 1e-12);
      }

    Matrix2c omega_proj{omega[0] * std::conj(omega[0]), omega[0] * std::conj(omega[1]),
                        omega[1] * std::conj(omega[0]), omega[1] * std::conj(omega[1])};
    Mat4 one_kron_omega = kron_identity_with(omega_proj);

    for (int i = 0; i < 4; ++i) {
      Matrix2c induced = partial_trace_ancilla(mul(outer(chi[i]), one_kron_omega));
      check_matrix_close(induced, to_matrix(m.effects[i]), 1e-12);
    }
  }
}
