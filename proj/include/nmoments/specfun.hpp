#pragma once

#include <complex>
#include <cstddef>

#include "nmoments/error.hpp"

/// Double-precision special functions: Gamma and its reciprocal, rising and
/// double factorials, Kummer's and Tricomi's confluent hypergeometric
/// functions, and the parabolic cylinder function D_nu.
///
/// Arguments are real except for D_nu, which also accepts purely imaginary
/// arguments. Poles and branch cuts are handled explicitly: reciprocal Gamma
/// is exactly zero at nonpositive integers and every non-integer power of a
/// negative or imaginary quantity is taken on the principal branch.
namespace nmoments::specfun {

using ComplexScalar = std::complex<double>;

inline constexpr ComplexScalar j{0.0, 1.0};

/// Largest |z| accepted by the confluent series.
inline constexpr double kMaxSeriesArgument = 700.0;

/// Orders within this distance of an integer take the integer code paths.
inline constexpr double kIntegerOrderTolerance = 1e-12;

struct SeriesControl {
  double rel_tolerance = 1e-16;
  std::size_t max_terms = 500;

  /// Throws Errc::invalid_argument unless rel_tolerance > 0 and max_terms >= 1.
  void validate() const;
};

/// A value together with an absolute error estimate.
template <class T>
struct Evaluated {
  T value;
  double abs_error = 0.0;
  std::size_t terms = 0;
};

// sin(pi x) and cos(pi x) with exact results at multiples of 1/2.
double sinpi(double x);
double cospi(double x);

/// exp(j pi w), exact at multiples of 1/2.
ComplexScalar unit_phase(double w);

/// z^w = exp(w Log z) with Log the principal logarithm (arg in (-pi, pi]).
/// 0^w is 0 for w > 0 and 1 for w == 0.
ComplexScalar principal_pow(ComplexScalar z, double w);

/// |x - round(x)| <= kIntegerOrderTolerance.
bool is_integer_order(double x);

double gamma(double x);
double recip_gamma(double x);

/// z (z+1) ... (z+n-1); 1 for n == 0.
double rising_factorial(double z, std::size_t n);

/// sqrt(2^(z+1) / pi) Gamma(z/2 + 1) for z > -2. Odd integers z >= -1 use
/// the product z (z-2) ... 3 1 (empty for z = -1), which coincides.
double double_factorial(double z);

/// Kummer's function 1F1(alpha; gamma_param; z). Negative z is evaluated as
/// e^z 1F1(gamma_param - alpha; gamma_param; -z) with the exponential folded
/// into the leading term, so no intermediate overflows.
Evaluated<double> kummer_phi_series(double alpha, double gamma_param, double z,
                                    const SeriesControl& ctl = {});

inline double kummer_phi(double alpha, double gamma_param, double z,
                         const SeriesControl& ctl = {}) {
  return kummer_phi_series(alpha, gamma_param, z, ctl).value;
}

/// Tricomi's function U(alpha, gamma_param, z) from its two-term Kummer
/// representation; complex for z < 0 via the principal branch of z^(1-gamma).
/// gamma_param must not be an integer and z must be nonzero.
Evaluated<ComplexScalar> tricomi_psi_series(double alpha, double gamma_param,
                                            double z,
                                            const SeriesControl& ctl = {});

inline ComplexScalar tricomi_psi(double alpha, double gamma_param, double z,
                                 const SeriesControl& ctl = {}) {
  return tricomi_psi_series(alpha, gamma_param, z, ctl).value;
}

/// Parabolic cylinder function D_nu(z) for real or purely imaginary z.
Evaluated<ComplexScalar> parabolic_cylinder_d_series(
    double nu, ComplexScalar z, const SeriesControl& ctl = {});

inline ComplexScalar parabolic_cylinder_d(double nu, ComplexScalar z,
                                          const SeriesControl& ctl = {}) {
  return parabolic_cylinder_d_series(nu, z, ctl).value;
}

}  // namespace nmoments::specfun
