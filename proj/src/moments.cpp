#include "nmoments/moments.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

namespace nmoments {
namespace {

using specfun::double_factorial;
using specfun::Evaluated;
using specfun::gamma;
using specfun::recip_gamma;
using std::numbers::pi;

constexpr double kEps = DBL_EPSILON;

// Enough terms for the series at the full 700 argument cap.
constexpr specfun::SeriesControl kSeries{1e-16, 2000};

// Per special-function call rounding allowance in err_estimate.
double slack(ComplexScalar v, int calls) { return 5.0 * kEps * std::abs(v) * calls; }

// (j sigma)^nu on the principal branch.
ComplexScalar j_sigma_pow(double sigma, double nu) {
  return std::pow(sigma, nu) * specfun::unit_phase(0.5 * nu);
}

MomentResult finish(ComplexScalar v, FormulaPath path, double err) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw Error(Errc::overflow, "moment exceeds double range");
  }
  return {v, path, err};
}

MomentResult raw_pcf(const NormalParams& p, double nu) {
  const double r = p.mu / p.sigma;
  const auto d = specfun::parabolic_cylinder_d_series(nu, {0.0, -r}, kSeries);
  const ComplexScalar scale = j_sigma_pow(p.sigma, nu) * std::exp(-0.25 * r * r);
  const ComplexScalar v = scale * d.value;
  return finish(v, FormulaPath::pcf, std::abs(scale) * d.abs_error + slack(v, 4));
}

MomentResult raw_phi_pair(const NormalParams& p, double nu) {
  const double r = p.mu / p.sigma;
  const double x = -0.5 * r * r;
  const double c1 = std::sqrt(pi) * recip_gamma(0.5 * (1.0 - nu));
  const double c2 = std::sqrt(2.0 * pi) * recip_gamma(-0.5 * nu);

  ComplexScalar bracket{0.0, 0.0};
  double err = 0.0;
  if (c1 != 0.0) {
    const auto phi = specfun::kummer_phi_series(-0.5 * nu, 0.5, x, kSeries);
    bracket += c1 * phi.value;
    err += std::fabs(c1) * phi.abs_error;
  }
  if (c2 != 0.0 && r != 0.0) {
    const auto phi = specfun::kummer_phi_series(0.5 * (1.0 - nu), 1.5, x, kSeries);
    bracket += specfun::j * (r * c2 * phi.value);
    err += std::fabs(r * c2) * phi.abs_error;
  }
  const ComplexScalar scale = j_sigma_pow(p.sigma, nu) * std::exp2(0.5 * nu);
  const ComplexScalar v = scale * bracket;
  return finish(v, FormulaPath::phi_pair, std::abs(scale) * err + slack(v, 4));
}

MomentResult raw_psi(const NormalParams& p, double nu) {
  const double r = p.mu / p.sigma;
  const double x = -0.5 * r * r;
  ComplexScalar psi;
  double err = 0.0;
  if (x == 0.0) {
    // U(a, 1/2, z) -> Gamma(1/2) / Gamma(a + 1/2) as z -> 0.
    psi = std::sqrt(pi) * recip_gamma(0.5 * (1.0 - nu));
  } else {
    const auto u = specfun::tricomi_psi_series(-0.5 * nu, 0.5, x, kSeries);
    psi = p.mu > 0.0 ? std::conj(u.value) : u.value;
    err = u.abs_error;
  }
  const ComplexScalar scale = j_sigma_pow(p.sigma, nu) * std::exp2(0.5 * nu);
  const ComplexScalar v = scale * psi;
  return finish(v, FormulaPath::psi, std::abs(scale) * err + slack(v, 5));
}

MomentResult raw_integer(const NormalParams& p, double nu) {
  const double n = std::nearbyint(nu);
  const double r = p.mu / p.sigma;
  const double x = -0.5 * r * r;
  double v = 0.0;
  double err = 0.0;
  if (std::fmod(n, 2.0) == 0.0) {
    const double scale = std::pow(p.sigma, n) * double_factorial(n - 1.0);
    const auto phi = specfun::kummer_phi_series(-0.5 * n, 0.5, x, kSeries);
    v = scale * phi.value;
    err = std::fabs(scale) * phi.abs_error;
  } else {
    const double scale = p.mu * std::pow(p.sigma, n - 1.0) * double_factorial(n);
    const auto phi = specfun::kummer_phi_series(0.5 * (1.0 - n), 1.5, x, kSeries);
    v = scale * phi.value;
    err = std::fabs(scale) * phi.abs_error;
  }
  return finish({v, 0.0}, FormulaPath::integer, err + slack(v, 2));
}

MomentResult central_gamma(double sigma, double nu) {
  const ComplexScalar v = j_sigma_pow(sigma, nu) * std::exp2(0.5 * nu) * std::sqrt(pi) *
                          recip_gamma(0.5 * (1.0 - nu));
  return finish(v, FormulaPath::gamma_form, slack(v, 2));
}

// sigma^nu 2^(nu/2) Gamma((nu+1)/2) / sqrt(pi) = E|X - mu|^nu
double abs_scale(double sigma, double nu) {
  return std::pow(sigma, nu) * std::exp2(0.5 * nu) * gamma(0.5 * (nu + 1.0)) / std::sqrt(pi);
}

}  // namespace

void NormalParams::validate() const {
  if (!std::isfinite(mu)) throw Error(Errc::domain, "mu must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(Errc::domain, "sigma must be positive");
  }
  const double r = mu / sigma;
  if (!(0.5 * r * r <= specfun::kMaxSeriesArgument)) {
    throw Error(Errc::domain, "(mu/sigma)^2 / 2 must not exceed 700");
  }
}

void validate_order(double nu) {
  if (!std::isfinite(nu) || !(nu > -1.0)) {
    throw Error(Errc::order_out_of_range, "nu must exceed -1");
  }
}

std::string_view to_string(MomentKind kind) {
  switch (kind) {
    case MomentKind::raw: return "raw";
    case MomentKind::central: return "central";
    case MomentKind::raw_abs: return "abs";
    case MomentKind::central_abs: return "central-abs";
  }
  return "?";
}

std::string_view to_string(FormulaPath path) {
  switch (path) {
    case FormulaPath::automatic: return "auto";
    case FormulaPath::pcf: return "pcf";
    case FormulaPath::phi_pair: return "phi-pair";
    case FormulaPath::psi: return "psi";
    case FormulaPath::integer: return "integer";
    case FormulaPath::gamma_form: return "gamma-form";
  }
  return "?";
}

MomentKind parse_moment_kind(std::string_view name) {
  for (auto k : {MomentKind::raw, MomentKind::central, MomentKind::raw_abs,
                 MomentKind::central_abs}) {
    if (to_string(k) == name) return k;
  }
  throw Error(Errc::invalid_argument, "unknown moment kind '" + std::string(name) + "'");
}

FormulaPath parse_formula_path(std::string_view name) {
  for (auto f : {FormulaPath::automatic, FormulaPath::pcf, FormulaPath::phi_pair,
                 FormulaPath::psi, FormulaPath::integer, FormulaPath::gamma_form}) {
    if (to_string(f) == name) return f;
  }
  throw Error(Errc::invalid_argument, "unknown formula path '" + std::string(name) + "'");
}

MomentResult raw_moment(const NormalParams& p, double nu, FormulaPath path) {
  p.validate();
  validate_order(nu);
  const bool integral = specfun::is_integer_order(nu);
  if (path == FormulaPath::automatic) {
    path = integral ? FormulaPath::integer : FormulaPath::phi_pair;
  }
  switch (path) {
    case FormulaPath::pcf: return raw_pcf(p, nu);
    case FormulaPath::phi_pair: return raw_phi_pair(p, nu);
    case FormulaPath::psi: return raw_psi(p, nu);
    case FormulaPath::integer:
      if (!integral) {
        throw Error(Errc::invalid_path, "integer path requires an integer order nu");
      }
      return raw_integer(p, nu);
    case FormulaPath::gamma_form:
      if (p.mu != 0.0) {
        throw Error(Errc::invalid_path, "gamma-form raw moments require mu = 0");
      }
      return central_gamma(p.sigma, nu);
    case FormulaPath::automatic: break;
  }
  throw Error(Errc::invalid_path, "unhandled formula path");
}

MomentResult central_moment(const NormalParams& p, double nu, FormulaPath path) {
  if (!std::isfinite(p.mu)) throw Error(Errc::domain, "mu must be finite");
  const NormalParams centred{0.0, p.sigma};
  if (path == FormulaPath::automatic) {
    validate_order(nu);
    path = specfun::is_integer_order(nu) ? FormulaPath::integer : FormulaPath::gamma_form;
  }
  return raw_moment(centred, nu, path);
}

MomentResult central_moment_cosine_form(const NormalParams& p, double nu) {
  NormalParams{0.0, p.sigma}.validate();
  validate_order(nu);
  const ComplexScalar v = j_sigma_pow(p.sigma, nu) * std::exp2(0.5 * nu) *
                          specfun::cospi(0.5 * nu) * gamma(0.5 * (nu + 1.0)) /
                          std::sqrt(pi);
  return finish(v, FormulaPath::gamma_form, slack(v, 3));
}

MomentResult central_moment_sign_form(const NormalParams& p, double nu) {
  NormalParams{0.0, p.sigma}.validate();
  validate_order(nu);
  const ComplexScalar v = (1.0 + specfun::unit_phase(nu)) * std::pow(p.sigma, nu) *
                          std::exp2(0.5 * nu - 1.0) * gamma(0.5 * (nu + 1.0)) /
                          std::sqrt(pi);
  return finish(v, FormulaPath::gamma_form, slack(v, 3));
}

MomentResult raw_abs_moment(const NormalParams& p, double nu) {
  p.validate();
  validate_order(nu);
  const double r = p.mu / p.sigma;
  const double scale = abs_scale(p.sigma, nu);
  const auto phi = specfun::kummer_phi_series(-0.5 * nu, 0.5, -0.5 * r * r, kSeries);
  const double v = scale * phi.value;
  return finish({v, 0.0}, FormulaPath::gamma_form, scale * phi.abs_error + slack(v, 2));
}

MomentResult central_abs_moment(const NormalParams& p, double nu) {
  if (!std::isfinite(p.mu)) throw Error(Errc::domain, "mu must be finite");
  NormalParams{0.0, p.sigma}.validate();
  validate_order(nu);
  const double v = abs_scale(p.sigma, nu);
  return finish({v, 0.0}, FormulaPath::gamma_form, slack(v, 1));
}

MomentResult moment(const NormalParams& p, const MomentQuery& q, FormulaPath path) {
  switch (q.kind) {
    case MomentKind::raw: return raw_moment(p, q.nu, path);
    case MomentKind::central: return central_moment(p, q.nu, path);
    case MomentKind::raw_abs:
    case MomentKind::central_abs:
      if (path != FormulaPath::automatic && path != FormulaPath::gamma_form) {
        throw Error(Errc::invalid_path, "absolute moments only have the gamma-form path");
      }
      return q.kind == MomentKind::raw_abs ? raw_abs_moment(p, q.nu)
                                           : central_abs_moment(p, q.nu);
  }
  throw Error(Errc::invalid_argument, "unknown moment kind");
}

ConsistencyReport consistency_report(const NormalParams& p, double nu) {
  p.validate();
  validate_order(nu);

  ConsistencyReport report;
  auto add = [&](FormulaPath path, std::string label, MomentResult r) {
    report.entries.push_back({path, std::move(label), r, 0.0});
  };
  add(FormulaPath::pcf, "pcf", raw_moment(p, nu, FormulaPath::pcf));
  add(FormulaPath::phi_pair, "phi-pair", raw_moment(p, nu, FormulaPath::phi_pair));
  add(FormulaPath::psi, "psi", raw_moment(p, nu, FormulaPath::psi));
  if (specfun::is_integer_order(nu)) {
    add(FormulaPath::integer, "integer", raw_moment(p, nu, FormulaPath::integer));
  }
  if (p.mu == 0.0) {
    add(FormulaPath::gamma_form, "gamma-form", raw_moment(p, nu, FormulaPath::gamma_form));
    add(FormulaPath::gamma_form, "cosine-form", central_moment_cosine_form(p, nu));
    add(FormulaPath::gamma_form, "sign-form", central_moment_sign_form(p, nu));
  }

  double largest = 1.0;
  for (auto& a : report.entries) {
    largest = std::max(largest, std::abs(a.result.value));
    for (const auto& b : report.entries) {
      a.deviation = std::max(a.deviation, std::abs(a.result.value - b.result.value));
    }
    report.max_deviation = std::max(report.max_deviation, a.deviation);
  }
  report.tolerance = 1e-10 * largest;
  return report;
}

}  // namespace nmoments
