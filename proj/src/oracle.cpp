#include "nmoments/oracle.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "gauss_kronrod.hpp"

namespace nmoments::oracle {
namespace {

using detail::QuadControl;
using std::numbers::pi;

// Gaussian mass beyond 12 sigma is below 1e-31.
constexpr double kWindow = 12.0;
constexpr double kQuadRel = 1e-12;

// e^(j pi w): the factor a negative base picks up on the principal branch.
ComplexScalar branch_phase(double w) {
  if (w == std::nearbyint(w)) return {std::fmod(w, 2.0) == 0.0 ? 1.0 : -1.0, 0.0};
  return std::polar(1.0, pi * w);
}

// int_lo^hi s^nu g(s) ds for 0 <= lo < hi. When lo == 0 and nu < 0 the
// substitution s = t^(1/(1+nu)) turns the endpoint singularity into the
// bounded integrand g(s(t)) / (1 + nu).
template <class G>
auto power_integral(double lo, double hi, double nu, G g, const QuadControl& ctl) {
  if (lo == 0.0 && nu < 0.0) {
    const double e = 1.0 + nu;
    return detail::integrate([&](double t) { return g(std::pow(t, 1.0 / e)) / e; }, 0.0,
                             std::pow(hi, e), ctl);
  }
  return detail::integrate([&](double s) { return std::pow(s, nu) * g(s); }, lo, hi, ctl);
}

bool is_central(MomentKind k) {
  return k == MomentKind::central || k == MomentKind::central_abs;
}

bool is_absolute(MomentKind k) {
  return k == MomentKind::raw_abs || k == MomentKind::central_abs;
}

NormalParams effective_params(const NormalParams& p, const MomentQuery& q) {
  if (is_central(q.kind)) {
    if (!std::isfinite(p.mu)) throw Error(Errc::domain, "mu must be finite");
    return {0.0, p.sigma};
  }
  return p;
}

IdentityCheck blank_check(Identity id, double g, double nu) {
  IdentityCheck c;
  c.identity = id;
  c.gamma_arg = g;
  c.nu = nu;
  return c;
}

template <class T>
void require_converged(const detail::QuadResult<T>& r, const char* what) {
  if (!r.converged) {
    throw Error(Errc::tolerance_not_met,
                std::string(what) + ": adaptive quadrature stopped with error estimate " +
                    std::to_string(r.error));
  }
}

IdentityCheck check_fourier(double g, double nu) {
  IdentityCheck c = blank_check(Identity::fourier, g, nu);
  QuadControl ctl;
  ctl.rel_tolerance = kQuadRel;
  // (-jx)^nu = |x|^nu e^(-j pi nu sgn(x) / 2) on the principal branch.
  const ComplexScalar pos_phase = std::polar(1.0, -0.5 * pi * nu);
  const ComplexScalar neg_phase = std::polar(1.0, 0.5 * pi * nu);
  auto pos = power_integral(0.0, kWindow, nu, [&](double s) {
    return pos_phase * std::exp(-s * s) * std::polar(1.0, s * g);
  }, ctl);
  auto neg = power_integral(0.0, kWindow, nu, [&](double s) {
    return neg_phase * std::exp(-s * s) * std::polar(1.0, -s * g);
  }, ctl);
  require_converged(pos, "fourier identity");
  require_converged(neg, "fourier identity");
  c.lhs = pos.value + neg.value;
  c.lhs_bound = pos.error + neg.error;
  c.rhs = std::sqrt(std::exp2(-nu) * pi) * std::exp(-g * g / 8.0) *
          specfun::parabolic_cylinder_d(nu, {g / std::numbers::sqrt2, 0.0});
  const double scale = std::max(std::abs(c.rhs), pos.abs_integral + neg.abs_integral);
  c.rel_deviation = std::abs(c.lhs - c.rhs) / scale;
  return c;
}

IdentityCheck check_half_line(double g, double nu) {
  IdentityCheck c = blank_check(Identity::half_line, g, nu);
  QuadControl ctl;
  ctl.rel_tolerance = kQuadRel;
  // The integrand peaks at x = -g/2 for negative g.
  const double upper = kWindow + std::max(0.0, -0.5 * g);
  auto r = power_integral(0.0, upper, nu, [&](double s) { return std::exp(-s * s - g * s); },
                          ctl);
  require_converged(r, "half-line identity");
  c.lhs = r.value;
  c.lhs_bound = r.error;
  c.rhs = std::exp2(-0.5 * (nu + 1.0)) * specfun::gamma(nu + 1.0) * std::exp(g * g / 8.0) *
          specfun::parabolic_cylinder_d(-nu - 1.0, {g / std::numbers::sqrt2, 0.0});
  const double scale = std::max(std::abs(c.rhs), r.abs_integral);
  c.rel_deviation = std::abs(c.lhs - c.rhs) / scale;
  return c;
}

}  // namespace

OracleEstimate quad_moment(const NormalParams& p, const MomentQuery& q) {
  const NormalParams e = effective_params(p, q);
  e.validate();
  validate_order(q.nu);

  const double nu = q.nu;
  const double m = e.mu;
  const double s = e.sigma;
  const double norm = 1.0 / (s * std::sqrt(2.0 * pi));
  auto density = [=](double x) {
    const double d = (x - m) / s;
    return norm * std::exp(-0.5 * d * d);
  };

  QuadControl ctl;
  ctl.rel_tolerance = kQuadRel;
  ctl.abs_tolerance = 0.5 * kQuadRel * std::pow(s, nu) *
                      std::pow(std::max(1.0, std::fabs(m / s)), nu);

  const double a = m - kWindow * s;
  const double b = m + kWindow * s;
  detail::QuadResult<double> pos;
  detail::QuadResult<double> neg;
  pos.converged = neg.converged = true;
  if (b > 0.0) pos = power_integral(std::max(a, 0.0), b, nu, density, ctl);
  if (a < 0.0) {
    neg = power_integral(std::max(-b, 0.0), -a, nu, [&](double x) { return density(-x); }, ctl);
  }
  require_converged(pos, "quad_moment");
  require_converged(neg, "quad_moment");

  const ComplexScalar value = is_absolute(q.kind)
                                  ? ComplexScalar{pos.value + neg.value, 0.0}
                                  : pos.value + branch_phase(nu) * neg.value;
  const double bound =
      std::max({pos.error + neg.error, DBL_EPSILON * std::abs(value), DBL_MIN});
  return {value, bound, pos.evaluations + neg.evaluations};
}

OracleEstimate mc_moment(const NormalParams& p, const MomentQuery& q, std::size_t n,
                         std::uint64_t seed) {
  if (n < 1000) throw Error(Errc::invalid_argument, "mc_moment: n must be at least 1000");
  const NormalParams e = effective_params(p, q);
  e.validate();
  validate_order(q.nu);

  const double nu = q.nu;
  const bool absolute = is_absolute(q.kind);
  const ComplexScalar phase = branch_phase(nu);

  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(e.mu, e.sigma);

  // Welford running mean and squared deviations for each component.
  double mean_re = 0.0, mean_im = 0.0, m2_re = 0.0, m2_im = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double x = normal(engine);
    ComplexScalar v;
    if (absolute || x >= 0.0) {
      v = std::pow(std::fabs(x), nu);
    } else {
      v = std::pow(-x, nu) * phase;
    }
    const double kk = static_cast<double>(k);
    const double d_re = v.real() - mean_re;
    const double d_im = v.imag() - mean_im;
    mean_re += d_re / kk;
    mean_im += d_im / kk;
    m2_re += d_re * (v.real() - mean_re);
    m2_im += d_im * (v.imag() - mean_im);
  }
  const double dn = static_cast<double>(n);
  const double std_error = std::sqrt((m2_re + m2_im) / (dn - 1.0) / dn);
  const ComplexScalar mean{mean_re, mean_im};
  const double bound = std::max(std_error, DBL_EPSILON * std::max(1.0, std::abs(mean)));
  return {mean, bound, n};
}

std::string_view to_string(Identity id) {
  return id == Identity::fourier ? "fourier" : "half-line";
}

bool IdentityReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok; }) &&
         max_rel_deviation <= threshold;
}

IdentityReport verify_integral_identities(std::span<const double> gamma_grid,
                                          std::span<const double> nu_grid) {
  for (double nu : nu_grid) validate_order(nu);
  for (double g : gamma_grid) {
    if (!std::isfinite(g) || std::fabs(g) > 30.0) {
      throw Error(Errc::domain, "identity grid requires |gamma| <= 30");
    }
  }

  IdentityReport report;
  for (double g : gamma_grid) {
    for (double nu : nu_grid) {
      for (auto id : {Identity::fourier, Identity::half_line}) {
        IdentityCheck c;
        try {
          c = id == Identity::fourier ? check_fourier(g, nu) : check_half_line(g, nu);
          c.ok = c.rel_deviation <= report.threshold;
        } catch (const Error& ex) {
          c = blank_check(id, g, nu);
          c.rel_deviation = std::numeric_limits<double>::infinity();
          c.error = ex.what();
        }
        report.max_rel_deviation = std::max(report.max_rel_deviation, c.rel_deviation);
        report.checks.push_back(std::move(c));
      }
    }
  }
  return report;
}

}  // namespace nmoments::oracle
