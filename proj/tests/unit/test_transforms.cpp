#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "matpow/transforms.hpp"
#include "support/oracles.hpp"

using namespace matpow;
using testing::random_phi;
using testing::random_real_2x2;

namespace {

const ComplexMatrix kJ{{0.5, 0.5}, {0.5, 0.5}};
const Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("transforms") {
  TEST_CASE("modulus_matrix") {
    CHECK(modulus_matrix(ComplexMatrix{{0.5, 0.5 * kI}, {0.5 * kI, 0.5}}) == kJ);
    CHECK(modulus_matrix(kJ) == kJ);
    CHECK(modulus_matrix(ComplexMatrix{{-0.5, 0.5}, {0.5, -0.5}}) == kJ);
    const ComplexMatrix m{{Complex(0.3, 0.4), -2.0}, {kI, 0.0}};
    CHECK(modulus_matrix(modulus_matrix(m)) == modulus_matrix(m));
  }

  TEST_CASE("phase_twist by construction") {
    const ComplexMatrix a{{0.6, 0.4}, {0.4, 0.6}};
    const ComplexMatrix t = phase_twist(a, PhaseTwist(kPi / 3));
    CHECK(t(0, 0) == Complex(0.6));
    CHECK(t(1, 1) == Complex(0.6));
    CHECK(std::abs(t(0, 1) - std::polar(0.4, kPi / 3)) < 1e-16);
    CHECK(std::abs(t(1, 0) - std::polar(0.4, -kPi / 3)) < 1e-16);
  }

  TEST_CASE("zero twist is the identity") {
    const ComplexMatrix a{{0.6, 0.4}, {0.4, 0.6}};
    CHECK(phase_twist(a, PhaseTwist(0.0)) == a);
  }

  TEST_CASE("twisting J by pi/4 gives an idempotent matrix") {
    const ComplexMatrix b = phase_twist(kJ, PhaseTwist(kPi / 4));
    const auto bb = testing::reference_multiply(testing::to_grid(b), testing::to_grid(b));
    CHECK(testing::grid_gap(bb, b) < 1e-15);
  }

  TEST_CASE("phase_twist preconditions") {
    CHECK_THROWS_AS(PhaseTwist{kPi}, PreconditionError);
    CHECK_THROWS_AS(PhaseTwist{-0.1}, PreconditionError);
    CHECK_THROWS_AS(PhaseTwist{2 * kPi}, PreconditionError);
    CHECK_NOTHROW(PhaseTwist{kPi + 1e-6});
    const PhaseTwist t(1.0);
    CHECK_THROWS_AS(phase_twist(ComplexMatrix::identity(3), t), PreconditionError);
    CHECK_THROWS_AS(phase_twist(ComplexMatrix{{0.5, 0.5 * kI}, {0.5, 0.5}}, t), PreconditionError);
    CHECK_THROWS_AS(phase_twist(ComplexMatrix{{0.5, -0.5}, {0.5, 0.5}}, t), PreconditionError);
    CHECK_NOTHROW(phase_twist(ComplexMatrix{{-0.5, 0.5}, {0.5, -0.5}}, t));
  }

  TEST_CASE("is_likewise") {
    const ComplexMatrix m{{Complex(0.3, 0.4), -2.0}, {kI, 0.1}};
    CHECK(is_likewise(m, m, 1e-12));
    CHECK(is_likewise(kJ, ComplexMatrix{{0.5, 0.5 * kI}, {0.5 * kI, 0.5}}, 1e-12));
    CHECK_FALSE(is_likewise(kJ, ComplexMatrix::identity(2), 1e-12));
    CHECK_THROWS_AS(is_likewise(kJ, ComplexMatrix::identity(3), 1e-12), DimensionError);
  }
}

TEST_SUITE("transforms properties") {
  TEST_CASE("powers of A and its twist are likewise") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
      const ComplexMatrix a = random_real_2x2(rng);
      const ComplexMatrix t = phase_twist(a, PhaseTwist(random_phi(rng)));
      ComplexMatrix an = a;
      ComplexMatrix tn = t;
      for (int n = 1; n <= 50; ++n, an = an * a, tn = tn * t) {
        CHECK(is_likewise(an, tn, 1e-10));
      }
    }
  }

  TEST_CASE("the (1,2) entry of the twisted power carries the twist phase") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 200; ++trial) {
      const ComplexMatrix a = random_real_2x2(rng);
      const double phi = random_phi(rng);
      const ComplexMatrix t = phase_twist(a, PhaseTwist(phi));
      for (std::uint64_t n : {1, 2, 3, 7, 20, 50}) {
        const ComplexMatrix an = power(a, n);
        const ComplexMatrix tn = power(t, n);
        CHECK(std::abs(tn(0, 1) - an(0, 1) * std::polar(1.0, phi)) <= 1e-10);
        CHECK(std::abs(tn(1, 0) - an(1, 0) * std::polar(1.0, -phi)) <= 1e-10);
        CHECK(std::abs(tn(0, 0) - an(0, 0)) <= 1e-10);
      }
    }
  }

  TEST_CASE("twisting does not change moduli") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 200; ++trial) {
      const ComplexMatrix a = random_real_2x2(rng);
      const ComplexMatrix t = phase_twist(a, PhaseTwist(random_phi(rng)));
      const ComplexMatrix ma = modulus_matrix(a);
      const ComplexMatrix mt = modulus_matrix(t);
      // std::polar(r, phi) has modulus r up to one ulp (cos/sin rounding).
      CHECK(max_abs_diff(ma, mt) <= 0x1.0p-52);
      CHECK(ma(0, 0) == mt(0, 0));
      CHECK(ma(1, 1) == mt(1, 1));
    }
  }
}
