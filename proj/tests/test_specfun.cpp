#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "nmoments/specfun.hpp"
#include "test_util.hpp"

using namespace nmoments;
using namespace nmoments::specfun;
namespace sf = nmoments::specfun;
using std::numbers::pi;
using testutil::rel_diff;

namespace {

template <class F>
Errc error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an nmoments::Error");
  return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("gamma at integers and half-integers") {
  CHECK(sf::gamma(5.0) == 24.0);
  CHECK(sf::gamma(1.0) == 1.0);
  CHECK(sf::gamma(0.5) == doctest::Approx(1.7724538509055160).epsilon(1e-15));
  CHECK(rel_diff(sf::gamma(0.75), 1.2254167024651776451) < 1e-14);
}

TEST_CASE("gamma against high-precision reference values") {
  struct Ref {
    double x, value;
  };
  const Ref refs[] = {
      {0.1, 9.5135076986687312858},
      {1e-5, 99999.422794225559493},
      {2.5, 1.3293403881791370205},
      {10.3, 716430.68906237640663},
      {33.7, 3.0321626547398717871e+36},
      {100.25, 2.94846628183876997e+156},
      {170.5, 5.5620924145599996107e+305},
      {-0.5, -3.5449077018110320546},
      {-2.5, -0.94530872048294188123},
      {-7.3, 0.00041838787301354802133},
      {-20.75, -1.869850001195195727e-19},
      {-169.5, 5.6482208842233254718e-306},
  };
  for (const auto& r : refs) {
    CAPTURE(r.x);
    CHECK(rel_diff(sf::gamma(r.x), r.value) < 1e-13);
  }
}

TEST_CASE("gamma poles and overflow") {
  CHECK(error_code([] { sf::gamma(0.0); }) == Errc::pole);
  CHECK(error_code([] { sf::gamma(-3.0); }) == Errc::pole);
  CHECK(error_code([] { sf::gamma(172.0); }) == Errc::overflow);
  CHECK(error_code([] { sf::gamma(171.7); }) == Errc::overflow);
}

TEST_CASE("recip_gamma") {
  CHECK(recip_gamma(0.0) == 0.0);
  CHECK(recip_gamma(-3.0) == 0.0);
  CHECK(recip_gamma(3.0) == 0.5);
  CHECK(recip_gamma(200.0) >= 0.0);
}

TEST_CASE("recip_gamma times gamma is one away from poles") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-40.0, 60.0);
  for (int k = 0; k < 2000; ++k) {
    const double x = u(rng);
    if (std::fabs(x - std::nearbyint(x)) < 1e-3 && x < 0.5) continue;
    CAPTURE(x);
    CHECK(std::fabs(recip_gamma(x) * sf::gamma(x) - 1.0) <= 1e-12);
  }
}

TEST_CASE("reflection on a grid in (-1, 1)") {
  for (int k = -99; k <= 99; ++k) {
    const double nu = k / 100.0;
    const double lhs = sf::gamma(0.5 * (1.0 + nu)) * sf::gamma(0.5 * (1.0 - nu));
    const double rhs = pi / std::cos(0.5 * pi * nu);
    CAPTURE(nu);
    CHECK(rel_diff(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("rising factorial") {
  CHECK(rising_factorial(3.0, 4) == 360.0);
  CHECK(rising_factorial(-2.75, 0) == 1.0);
  CHECK(rising_factorial(1e300, 0) == 1.0);
  CHECK(rel_diff(rising_factorial(0.5, 2), sf::gamma(2.5) / sf::gamma(0.5)) < 1e-15);
  CHECK(rising_factorial(0.5, 2) == 0.75);
  CHECK(error_code([] { rising_factorial(100.0, 200); }) == Errc::overflow);
}

TEST_CASE("rising factorial recurrence is exact") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 200; ++k) {
    const double z = u(rng);
    for (std::size_t n = 0; n < 30; ++n) {
      CHECK(rising_factorial(z, n + 1) == rising_factorial(z, n) * (z + static_cast<double>(n)));
    }
  }
}

TEST_CASE("double factorial") {
  CHECK(double_factorial(7.0) == 105.0);
  CHECK(double_factorial(1.0) == 1.0);
  CHECK(double_factorial(-1.0) == 1.0);
  // The Gamma extension at zero, which is not the combinatorial 0!! = 1.
  CHECK(rel_diff(double_factorial(0.0), 0.7978845608028654) < 1e-15);
  CHECK(rel_diff(double_factorial(0.0), std::sqrt(2.0 / pi) * sf::gamma(1.0)) < 1e-15);
  for (double z : {3.0, 5.0, 9.0, 15.0}) {
    CAPTURE(z);
    CHECK(rel_diff(double_factorial(z), std::sqrt(std::exp2(z + 1.0) / pi) * sf::gamma(0.5 * z + 1.0)) <
          1e-14);
  }
  CHECK(error_code([] { double_factorial(-2.5); }) == Errc::domain);
}

TEST_CASE("series control validation") {
  CHECK_NOTHROW(SeriesControl{}.validate());
  CHECK(error_code([] { SeriesControl{0.0, 10}.validate(); }) == Errc::invalid_argument);
  CHECK(error_code([] { SeriesControl{1e-16, 0}.validate(); }) == Errc::invalid_argument);
}

TEST_CASE("kummer_phi values") {
  CHECK(kummer_phi(0.3, 1.7, 0.0) == 1.0);
  CHECK(kummer_phi(-4.0, 0.5, 0.0) == 1.0);
  CHECK(rel_diff(kummer_phi(1.0, 1.0, 2.0), 7.3890560989306502272) < 1e-15);
  CHECK(rel_diff(kummer_phi(-0.5, 0.5, -2.0), 2.5279113098818290978) < 1e-14);
  CHECK(rel_diff(kummer_phi(2.3, 0.7, -15.0), 0.0019086660852829365283) < 1e-13);
  CHECK(rel_diff(kummer_phi(-2.5, 1.5, 30.0), -21619585.930391470639) < 1e-13);
  const SeriesControl long_series{1e-16, 2000};
  CHECK(rel_diff(kummer_phi(0.5, 1.5, -600.0, long_series), 0.036180062727913382968) < 1e-13);
}

TEST_CASE("kummer_phi errors") {
  CHECK(error_code([] { kummer_phi(0.5, 0.0, 1.0); }) == Errc::pole);
  CHECK(error_code([] { kummer_phi(0.5, -2.0, 1.0); }) == Errc::pole);
  CHECK(error_code([] { kummer_phi(0.5, 1.5, 701.0); }) == Errc::domain);
  CHECK(error_code([] { kummer_phi(0.5, 1.5, 50.0, SeriesControl{1e-16, 5}); }) ==
        Errc::no_convergence);
}

TEST_CASE("kummer transformation on random triples") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ua(-3.0, 3.0);
  std::uniform_real_distribution<double> ug(0.0, 5.0);
  std::uniform_real_distribution<double> uz(-20.0, 20.0);
  for (int k = 0; k < 500; ++k) {
    double g = ug(rng);
    if (g == 0.0) g = 5.0;
    const double a = ua(rng);
    const double z = uz(rng);
    const double lhs = kummer_phi(a, g, z);
    const double rhs = std::exp(z) * kummer_phi(g - a, g, -z);
    CAPTURE(a);
    CAPTURE(g);
    CAPTURE(z);
    CHECK(rel_diff(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("kummer_phi polynomial case sums exactly") {
  // Phi(-2, 1/2; z) = 1 - 4z + 4z^2/3
  CHECK(kummer_phi(-2.0, 0.5, -3.0) == doctest::Approx(1.0 + 12.0 + 12.0).epsilon(1e-15));
  CHECK(kummer_phi(-1.0, 0.5, -2.0) == 5.0);
}

TEST_CASE("tricomi_psi values") {
  const ComplexScalar one = tricomi_psi(-0.5, 0.5, 1.0);
  CHECK(rel_diff(one.real(), 1.0) < 1e-15);
  CHECK(one.imag() == 0.0);
  const ComplexScalar a = tricomi_psi(-1.0, 0.5, -2.0);
  CHECK(a.real() == doctest::Approx(-2.5).epsilon(1e-15));
  CHECK(a.imag() == 0.0);
  CHECK(rel_diff(tricomi_psi(-0.75, 0.5, -2.0),
                 ComplexScalar{-1.3109327315553656732, 1.3053423028237213278}) < 1e-14);
  const ComplexScalar b = tricomi_psi(0.3, 1.7, 2.5);
  CHECK(rel_diff(b.real(), 0.7920593279899221085) < 1e-14);
  CHECK(std::fabs(b.imag()) <= 1e-14 * std::fabs(b.real()));
}

TEST_CASE("tricomi_psi is real for positive arguments") {
  for (double a : {-2.2, -0.5, 0.4, 1.9}) {
    for (double g : {0.5, 1.3, 2.7}) {
      for (double z : {0.1, 1.0, 7.5}) {
        const ComplexScalar v = tricomi_psi(a, g, z);
        CHECK(std::fabs(v.imag()) <= 1e-14 * std::abs(v));
      }
    }
  }
}

TEST_CASE("tricomi_psi errors") {
  CHECK(error_code([] { tricomi_psi(0.5, 0.5, 0.0); }) == Errc::domain);
  CHECK(error_code([] { tricomi_psi(0.5, 2.0, 1.0); }) == Errc::domain);
}

TEST_CASE("parabolic cylinder values") {
  CHECK(rel_diff(parabolic_cylinder_d(1.5, {0.0, -0.7}),
                 ComplexScalar{-0.9350540969983749978, -0.71716816792589419792}) < 1e-14);
  CHECK(rel_diff(parabolic_cylinder_d(2.5, {1.3, 0.0}).real(), -0.17956316566343369334) < 1e-13);
  // The two Kummer terms nearly cancel here; the error estimate must cover it.
  const auto small = parabolic_cylinder_d_series(-3.5, {2.2, 0.0});
  CHECK(std::fabs(small.value.real() - 0.0073193472035828812307) <= small.abs_error);
  CHECK(rel_diff(small.value.real(), 0.0073193472035828812307) < 1e-12);
  CHECK(rel_diff(parabolic_cylinder_d(0.5, {0.0, 0.0}).real(), 0.58136831701911858184) < 1e-14);
  CHECK(rel_diff(parabolic_cylinder_d(3.0, {1.2, 0.0}).real(), -1.3060500824049702148) < 1e-14);
  CHECK(rel_diff(parabolic_cylinder_d(-0.5, {-3.0, 0.0}).real(), 8.2111204276138111619) < 1e-13);
}

TEST_CASE("parabolic cylinder of order zero is a Gaussian") {
  for (double z : {-4.0, -1.0, 0.0, 0.3, 2.0, 9.0}) {
    const ComplexScalar d = parabolic_cylinder_d(0.0, {z, 0.0});
    CAPTURE(z);
    CHECK(rel_diff(d.real(), std::exp(-0.25 * z * z)) < 1e-14);
    CHECK(d.imag() == 0.0);
  }
}

TEST_CASE("parabolic cylinder at zero") {
  for (int k = -9; k <= 80; ++k) {
    const double nu = k / 10.0;
    const double expect = std::exp2(0.5 * nu) * std::sqrt(pi) * recip_gamma(0.5 * (1.0 - nu));
    const ComplexScalar d = parabolic_cylinder_d(nu, {0.0, 0.0});
    CAPTURE(nu);
    CHECK(std::abs(d - expect) <= 1e-13 * std::max(1.0, std::fabs(expect)));
  }
  // Odd orders vanish exactly.
  CHECK(parabolic_cylinder_d(1.0, {0.0, 0.0}) == ComplexScalar{0.0, 0.0});
  CHECK(parabolic_cylinder_d(5.0, {0.0, 0.0}) == ComplexScalar{0.0, 0.0});
}

TEST_CASE("parabolic cylinder errors") {
  CHECK(error_code([] { parabolic_cylinder_d(0.5, {1.0, 1.0}); }) == Errc::domain);
  CHECK(error_code([] { parabolic_cylinder_d(0.5, {40.0, 0.0}); }) == Errc::domain);
}

TEST_CASE("cosine identity with the principal-branch sign") {
  for (int k = 0; k <= 60; ++k) {
    const double nu = k / 10.0;
    const ComplexScalar s = unit_phase(nu);
    const ComplexScalar v = (1.0 + s) / (2.0 * unit_phase(0.5 * nu));
    CAPTURE(nu);
    CHECK(std::fabs(v.real() - std::cos(0.5 * pi * nu)) <= 1e-13);
    CHECK(std::fabs(v.imag()) <= 1e-13);
  }
}

TEST_CASE("principal power and phase helpers") {
  CHECK(unit_phase(1.0) == ComplexScalar{-1.0, 0.0});
  CHECK(unit_phase(0.5) == ComplexScalar{0.0, 1.0});
  CHECK(unit_phase(-1.5) == ComplexScalar{0.0, 1.0});
  CHECK(principal_pow({-4.0, 0.0}, 0.5) == ComplexScalar{0.0, 2.0});
  CHECK(principal_pow({0.0, 0.0}, 0.0) == ComplexScalar{1.0, 0.0});
  CHECK(principal_pow({0.0, 0.0}, 2.5) == ComplexScalar{0.0, 0.0});
  const ComplexScalar q = principal_pow(j * 2.0, 1.5);
  CHECK(rel_diff(q, std::pow(2.0, 1.5) * std::polar(1.0, 0.75 * pi)) < 1e-15);
  CHECK(error_code([] { principal_pow({0.0, 0.0}, -0.5); }) == Errc::domain);
  CHECK(is_integer_order(3.0 + 1e-13));
  CHECK_FALSE(is_integer_order(3.0 + 1e-9));
  CHECK(sinpi(1.0) == 0.0);
  CHECK(cospi(0.5) == 0.0);
}

TEST_CASE("conjugation is an involution") {
  const ComplexScalar z = parabolic_cylinder_d(1.5, {0.0, -0.7});
  CHECK(std::conj(std::conj(z)) == z);
  CHECK(std::isfinite(z.real()));
  CHECK(std::isfinite(z.imag()));
}
