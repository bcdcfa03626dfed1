// Shared test utilities: deterministic random generators for vectors,
// observables, states, and rotations.
//
// Observables for the exact-identity properties are drawn on a dyadic grid
// (multiples of 2^-20) so every coefficient operation in the constructions
// under test is exact in double precision and equalities can be asserted
// bitwise.
#pragma once

#include <cmath>
#include <cstdint>

#include <catch2/catch_amalgamated.hpp>
#include <murkit/murkit.hpp>

namespace testutil {

using namespace murkit;

struct Rng {
  Xoshiro256pp gen;

  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double uniform() { return gen.next_double(); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  Vec3 unit_vec() {
    // Marsaglia's method
    while (true) {
      double x1 = uniform(-1, 1), x2 = uniform(-1, 1);
      double s = x1 * x1 + x2 * x2;
      if (s >= 1.0 || s == 0.0) continue;
      double f = std::sqrt(1.0 - s);
      return {2 * x1 * f, 2 * x2 * f, 1 - 2 * s};
    }
  }

  Vec3 in_ball() {
    while (true) {
      Vec3 v{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
      if (norm_squared(v) <= 1.0) return v;
    }
  }

  Rotation rotation() { return Rotation::from_axis_angle(unit_vec(), uniform(0, 2 * kPi)); }

  // multiple of 2^-20 in [lo, hi]; lo and hi must themselves be dyadic
  double dyadic(double lo, double hi) {
    auto steps = static_cast<std::uint64_t>((hi - lo) * 1048576.0);
    return lo + static_cast<double>(gen.next() % (steps + 1)) * 0x1.0p-20;
  }

  // valid observable with all coefficients on the dyadic grid
  BinaryObservable dyadic_observable() {
    while (true) {
      double bias = dyadic(0.0, 2.0);
      Vec3 w{dyadic(-1, 1), dyadic(-1, 1), dyadic(-1, 1)};
      double lim = std::min(bias, 2.0 - bias);
      if (norm_squared(w) <= lim * lim) return BinaryObservable(bias, w);
    }
  }

  BinaryObservable random_observable() {
    double bias = uniform(0.0, 2.0);
    double lim = std::min(bias, 2.0 - bias);
    return BinaryObservable(bias, lim * in_ball());
  }

  BinaryObservable random_unbiased() { return BinaryObservable::unbiased(in_ball()); }
  BinaryObservable random_sharp() { return BinaryObservable::sharp(unit_vec()); }

  QubitState random_pure() { return QubitState::pure(unit_vec()); }
  QubitState random_mixed() { return QubitState(uniform() * in_ball()); }
};

template <typename Fn>
errc expect_error(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a murkit::Error");
  return errc::usage;  // unreachable
}

inline void check_close(Vec3 a, Vec3 b, double tol) {
  CHECK(std::abs(a.x - b.x) <= tol);
  CHECK(std::abs(a.y - b.y) <= tol);
  CHECK(std::abs(a.z - b.z) <= tol);
}

inline void check_close(const Effect& a, const Effect& b, double tol) {
  CHECK(std::abs(a.weight - b.weight) <= tol);
  check_close(a.vector, b.vector, tol);
}

}  // namespace testutil
