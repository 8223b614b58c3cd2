#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nmoments/moments.hpp"

/// Formula-independent estimates of the same expectations the moments module
/// evaluates in closed form: adaptive quadrature of the defining integrals and
/// seeded Monte Carlo. Nothing here calls into the moment formulas.
namespace nmoments::oracle {

struct OracleEstimate {
  ComplexScalar value;
  double abs_error_bound = 0.0;  // > 0
  std::size_t evaluations = 0;   // integrand evaluations or samples
};

/// Integrates the moment's defining expectation over mu +/- 12 sigma, split at
/// 0. Negative x contributes |x|^nu e^(j pi nu) for the raw and central kinds.
/// Target error: 1e-12 * max(sigma^nu max(1, |mu/sigma|)^nu, E|X|^nu).
/// Throws Errc::tolerance_not_met if the adaptive scheme cannot get there.
OracleEstimate quad_moment(const NormalParams& p, const MomentQuery& q);

/// Sample mean of the transformed variate over n >= 1000 normal draws from a
/// generator seeded with seed; the bound is the standard error.
OracleEstimate mc_moment(const NormalParams& p, const MomentQuery& q, std::size_t n,
                         std::uint64_t seed);

enum class Identity {
  fourier,    // int (-jx)^nu e^(-x^2 + j x g) dx over the real line
  half_line,  // int_0^inf x^nu e^(-x^2 - x g) dx
};

std::string_view to_string(Identity id);

struct IdentityCheck {
  Identity identity = Identity::fourier;
  double gamma_arg = 0.0;
  double nu = 0.0;
  ComplexScalar lhs;    // quadrature
  ComplexScalar rhs;    // parabolic cylinder closed form
  double lhs_bound = 0.0;
  double rel_deviation = 0.0;  // |lhs - rhs| / max(|rhs|, integral of |integrand|)
  bool ok = false;
  std::string error;  // non-empty when either side failed to evaluate
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  double max_rel_deviation = 0.0;
  double threshold = 1e-8;

  bool passed() const;
};

/// Checks both parabolic-cylinder integral identities at every (gamma, nu)
/// pair. Requires nu > -1 and |gamma| <= 30.
IdentityReport verify_integral_identities(std::span<const double> gamma_grid,
                                          std::span<const double> nu_grid);

}  // namespace nmoments::oracle
