#include "nmoments/specfun.hpp"

#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

namespace nmoments {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::pole: return "pole";
    case Errc::overflow: return "overflow";
    case Errc::domain: return "domain";
    case Errc::no_convergence: return "no-convergence";
    case Errc::order_out_of_range: return "order-out-of-range";
    case Errc::invalid_path: return "invalid-path";
    case Errc::tolerance_not_met: return "tolerance-not-met";
    case Errc::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace nmoments

namespace nmoments::specfun {
namespace {

using std::numbers::pi;

constexpr double kEps = DBL_EPSILON;

// Gamma(x) overflows a double above this argument.
constexpr double kGammaOverflowArg = 171.6243769563027;

// Lanczos approximation with Godfrey's coefficients, g = 607/128, n = 15.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczosCoef = {
    0.99999999999999709182,   57.156235665862923517,    -59.597960355475491248,
    14.136097974741747174,    -0.49191381609762019978,  .33994649984811888699e-4,
    .46523628927048575665e-4, -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3, .21743961811521264320e-3, -.16431810653676389022e-3,
    .84418223983852743293e-4, -.26190838401581408670e-4, .36899182659531622704e-5};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double lanczos_sum(double xm1) {
  double a = kLanczosCoef[0];
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) {
    a += kLanczosCoef[i] / (xm1 + static_cast<double>(i));
  }
  return a;
}

// Gamma for 0.5 <= x <= kGammaOverflowArg.
double gamma_lanczos(double x) {
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  // t^(x-1/2) is split in two so it cannot overflow before e^-t is applied.
  const double half_power = std::pow(t, 0.5 * (xm1 + 0.5));
  return std::sqrt(2.0 * pi) * (half_power * std::exp(-t)) * half_power *
         lanczos_sum(xm1);
}

double log_gamma_lanczos(double x) {
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (xm1 + 0.5) * std::log(t) - t +
         std::log(lanczos_sum(xm1));
}

double factorial_of(double n) {
  double p = 1.0;
  for (double k = 2.0; k <= n; k += 1.0) p *= k;
  return p;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(Errc::overflow, std::string(what) + ": result exceeds double range");
  }
}

void require_finite(ComplexScalar v, const char* what) {
  require_finite(v.real(), what);
  require_finite(v.imag(), what);
}

}  // namespace

void SeriesControl::validate() const {
  if (!(rel_tolerance > 0.0) || !std::isfinite(rel_tolerance)) {
    throw Error(Errc::invalid_argument, "series rel_tolerance must be positive");
  }
  if (max_terms < 1) {
    throw Error(Errc::invalid_argument, "series max_terms must be at least 1");
  }
}

double sinpi(double x) {
  if (!std::isfinite(x)) return std::nan("");
  double r = std::fmod(x, 2.0);  // exact, |r| < 2
  if (r < -1.0) r += 2.0;
  else if (r > 1.0) r -= 2.0;
  // r in [-1, 1]
  const double sign = r < 0.0 ? -1.0 : 1.0;
  double a = std::fabs(r);
  if (a == 0.0 || a == 1.0) return 0.0;
  if (a == 0.5) return sign;
  if (a > 0.5) a = 1.0 - a;  // sin(pi a) = sin(pi (1 - a))
  if (a > 0.25) return sign * std::cos(pi * (0.5 - a));
  return sign * std::sin(pi * a);
}

double cospi(double x) {
  if (!std::isfinite(x)) return std::nan("");
  double r = std::fmod(std::fabs(x), 2.0);
  if (r > 1.0) r = 2.0 - r;
  // r in [0, 1]
  if (r == 0.5) return 0.0;
  if (r <= 0.25) return std::cos(pi * r);
  if (r < 0.75) return std::sin(pi * (0.5 - r));
  return -std::cos(pi * (1.0 - r));
}

ComplexScalar unit_phase(double w) { return {cospi(w), sinpi(w)}; }

ComplexScalar principal_pow(ComplexScalar z, double w) {
  const double re = z.real();
  const double im = z.imag();
  if (re == 0.0 && im == 0.0) {
    if (w > 0.0) return {0.0, 0.0};
    if (w == 0.0) return {1.0, 0.0};
    throw Error(Errc::domain, "principal_pow: zero raised to a negative power");
  }
  // Signed zeros are ignored so the negative real axis always maps to arg = +pi.
  if (im == 0.0) {
    if (re > 0.0) return {std::pow(re, w), 0.0};
    return std::pow(-re, w) * unit_phase(w);
  }
  if (re == 0.0) {
    if (im > 0.0) return std::pow(im, w) * unit_phase(0.5 * w);
    return std::pow(-im, w) * unit_phase(-0.5 * w);
  }
  return std::polar(std::pow(std::abs(z), w), w * std::arg(z));
}

bool is_integer_order(double x) {
  return std::isfinite(x) && std::fabs(x - std::nearbyint(x)) <= kIntegerOrderTolerance;
}

double gamma(double x) {
  if (std::isnan(x) || std::isinf(x)) {
    throw Error(Errc::domain, "gamma: argument must be finite");
  }
  if (is_nonpositive_integer(x)) {
    throw Error(Errc::pole, "gamma: pole at nonpositive integer " + std::to_string(x));
  }
  if (x > kGammaOverflowArg) {
    throw Error(Errc::overflow, "gamma: result exceeds double range");
  }
  if (x == std::floor(x)) return factorial_of(x - 1.0);
  if (x >= 0.5 && x - 0.5 == std::floor(x)) {
    // Gamma(k + 1/2) = sqrt(pi) (1/2)(3/2)...(k - 1/2)
    double p = std::sqrt(pi);
    for (double f = 0.5; f < x; f += 1.0) p *= f;
    return p;
  }
  if (x >= 0.5) return gamma_lanczos(x);

  // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
  const double s = sinpi(x);
  const double y = 1.0 - x;
  if (y <= kGammaOverflowArg) return pi / (s * gamma_lanczos(y));
  const double mag = std::exp(std::log(pi) - std::log(std::fabs(s)) - log_gamma_lanczos(y));
  return s < 0.0 ? -mag : mag;
}

double recip_gamma(double x) {
  if (std::isnan(x) || std::isinf(x)) {
    throw Error(Errc::domain, "recip_gamma: argument must be finite");
  }
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > kGammaOverflowArg) return std::exp(-log_gamma_lanczos(x));
  if (x >= 0.5) return 1.0 / gamma(x);

  const double y = 1.0 - x;
  if (y > kGammaOverflowArg) {
    throw Error(Errc::overflow, "recip_gamma: result exceeds double range");
  }
  return sinpi(x) * gamma(y) / pi;
}

double rising_factorial(double z, std::size_t n) {
  double p = 1.0;
  for (std::size_t k = 0; k < n; ++k) p *= z + static_cast<double>(k);
  require_finite(p, "rising_factorial");
  return p;
}

double double_factorial(double z) {
  if (!std::isfinite(z) || z <= -2.0) {
    throw Error(Errc::domain, "double_factorial: argument must exceed -2");
  }
  if (z == std::floor(z) && std::fmod(z, 2.0) != 0.0) {
    // odd integer >= -1
    double p = 1.0;
    for (double k = z; k > 1.0; k -= 2.0) p *= k;
    require_finite(p, "double_factorial");
    return p;
  }
  const double arg = 0.5 * z + 1.0;
  if (is_nonpositive_integer(arg)) {
    throw Error(Errc::domain, "double_factorial: Gamma(z/2 + 1) has a pole");
  }
  const double v = std::exp2(0.5 * (z + 1.0)) / std::sqrt(pi) * gamma(arg);
  require_finite(v, "double_factorial");
  return v;
}

Evaluated<double> kummer_phi_series(double alpha, double gamma_param, double z,
                                    const SeriesControl& ctl) {
  ctl.validate();
  if (!std::isfinite(alpha) || !std::isfinite(gamma_param) || !std::isfinite(z)) {
    throw Error(Errc::domain, "kummer_phi: arguments must be finite");
  }
  if (is_nonpositive_integer(gamma_param)) {
    throw Error(Errc::pole, "kummer_phi: gamma_param is a nonpositive integer");
  }
  if (std::fabs(z) > kMaxSeriesArgument) {
    throw Error(Errc::domain, "kummer_phi: |z| exceeds 700");
  }
  if (z == 0.0) return {1.0, 0.0, 1};

  // For z < 0 sum e^z 1F1(gamma - alpha; gamma; -z). When gamma - alpha > 0
  // every term is positive. A polynomial (alpha a nonpositive integer) already
  // has positive terms for z < 0 and is summed as is.
  const bool transform = z < 0.0 && !is_nonpositive_integer(alpha);
  const double a = transform ? gamma_param - alpha : alpha;
  const double b = gamma_param;
  const double x = transform ? -z : z;
  const double lead = transform ? std::exp(z) : 1.0;

  double term = lead;
  double sum = lead;
  double abs_sum = std::fabs(lead);
  double tail = 0.0;
  bool converged = false;
  std::size_t n = 0;
  for (; n < ctl.max_terms; ++n) {
    const double dn = static_cast<double>(n);
    term *= (a + dn) * x / ((b + dn) * (dn + 1.0));
    sum += term;
    abs_sum += std::fabs(term);
    if (term == 0.0) {
      // a + n hit zero exactly: the series is a polynomial.
      converged = true;
      break;
    }
    // Past every sign change the term ratios are bounded by r below, so the
    // remainder is a geometric tail.
    const double m = dn + 1.0;
    if (m > -a && m > -b) {
      const double ratio = std::fabs((a + m) / (b + m) * x) / (m + 1.0);
      const double r = a > b ? ratio : std::fabs(x) / (m + 1.0);
      if (r < 1.0) {
        tail = std::fabs(term) * r / (1.0 - r);
        if (tail <= ctl.rel_tolerance * std::fabs(sum)) {
          converged = true;
          break;
        }
      }
    }
    if (!std::isfinite(sum)) break;
  }
  require_finite(sum, "kummer_phi");
  if (!converged) {
    throw Error(Errc::no_convergence, "kummer_phi: series did not converge within " +
                                          std::to_string(ctl.max_terms) + " terms");
  }
  return {sum, tail + 2.0 * kEps * abs_sum, n + 2};
}

Evaluated<ComplexScalar> tricomi_psi_series(double alpha, double gamma_param,
                                            double z, const SeriesControl& ctl) {
  if (z == 0.0) throw Error(Errc::domain, "tricomi_psi: z must be nonzero");
  if (!std::isfinite(gamma_param) || gamma_param == std::floor(gamma_param)) {
    throw Error(Errc::domain, "tricomi_psi: gamma_param must not be an integer");
  }
  const double c1 = gamma(1.0 - gamma_param) * recip_gamma(alpha - gamma_param + 1.0);
  const double c2 = gamma(gamma_param - 1.0) * recip_gamma(alpha);

  ComplexScalar value{0.0, 0.0};
  double err = 0.0;
  double mag = 0.0;
  std::size_t terms = 0;
  if (c1 != 0.0) {
    const auto phi = kummer_phi_series(alpha, gamma_param, z, ctl);
    value += c1 * phi.value;
    err += std::fabs(c1) * phi.abs_error;
    mag += std::fabs(c1 * phi.value);
    terms += phi.terms;
  }
  if (c2 != 0.0) {
    const auto phi = kummer_phi_series(alpha - gamma_param + 1.0, 2.0 - gamma_param, z, ctl);
    const ComplexScalar factor = c2 * principal_pow(z, 1.0 - gamma_param);
    value += factor * phi.value;
    err += std::abs(factor) * phi.abs_error;
    mag += std::abs(factor * phi.value);
    terms += phi.terms;
  }
  require_finite(value, "tricomi_psi");
  return {value, err + 5.0 * kEps * mag, terms};
}

Evaluated<ComplexScalar> parabolic_cylinder_d_series(double nu, ComplexScalar z,
                                                     const SeriesControl& ctl) {
  if (!std::isfinite(nu)) throw Error(Errc::domain, "parabolic_cylinder_d: nu must be finite");
  const double re = z.real();
  const double im = z.imag();
  if (re != 0.0 && im != 0.0) {
    throw Error(Errc::domain,
                "parabolic_cylinder_d: z must be real or purely imaginary");
  }
  const double z2 = re != 0.0 ? re * re : -im * im;  // z^2 is real on both axes
  const double w = 0.5 * z2;
  if (std::fabs(w) > kMaxSeriesArgument) {
    throw Error(Errc::domain, "parabolic_cylinder_d: |z|^2 / 2 exceeds 700");
  }

  const double prefactor = std::exp2(0.5 * nu) * std::exp(-0.25 * z2);
  const double c1 = std::sqrt(pi) * recip_gamma(0.5 * (1.0 - nu));
  const double c2 = std::sqrt(2.0 * pi) * recip_gamma(-0.5 * nu);

  ComplexScalar bracket{0.0, 0.0};
  double err = 0.0;
  double mag = 0.0;
  std::size_t terms = 0;
  if (c1 != 0.0) {
    const auto phi = kummer_phi_series(-0.5 * nu, 0.5, w, ctl);
    bracket += c1 * phi.value;
    err += std::fabs(c1) * phi.abs_error;
    mag += std::fabs(c1 * phi.value);
    terms += phi.terms;
  }
  if (c2 != 0.0 && z != ComplexScalar{0.0, 0.0}) {
    const auto phi = kummer_phi_series(0.5 * (1.0 - nu), 1.5, w, ctl);
    bracket -= c2 * z * phi.value;
    err += std::fabs(c2) * std::abs(z) * phi.abs_error;
    mag += std::fabs(c2 * phi.value) * std::abs(z);
    terms += phi.terms;
  }
  const ComplexScalar value = prefactor * bracket;
  require_finite(value, "parabolic_cylinder_d");
  return {value, prefactor * (err + 5.0 * kEps * mag), terms};
}

}  // namespace nmoments::specfun
