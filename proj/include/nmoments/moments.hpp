#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nmoments/specfun.hpp"

namespace nmoments {

using specfun::ComplexScalar;

/// Mean and standard deviation of X ~ N(mu, sigma^2).
struct NormalParams {
  double mu = 0.0;
  double sigma = 1.0;

  /// Throws Errc::domain unless sigma > 0, both are finite and
  /// (mu/sigma)^2 / 2 <= 700.
  void validate() const;
};

enum class MomentKind { raw, central, raw_abs, central_abs };

struct MomentQuery {
  MomentKind kind = MomentKind::raw;
  double nu = 0.0;
};

/// Which closed form evaluates a moment. The raw and central families have
/// several equivalent forms; the absolute families have one (gamma_form).
enum class FormulaPath {
  automatic,   // integer orders -> integer, otherwise phi_pair (raw) / gamma_form (central)
  pcf,         // (j sigma)^nu e^(-mu^2/4sigma^2) D_nu(-j mu/sigma)
  phi_pair,    // D_nu expanded into its two Kummer terms
  psi,         // Tricomi U at -mu^2/2sigma^2, conjugated for mu > 0
  integer,     // even/odd closed forms for integer orders
  gamma_form,  // pure Gamma expressions (central, absolute)
};

std::string_view to_string(MomentKind kind);
std::string_view to_string(FormulaPath path);
/// Inverse of to_string; throws Errc::invalid_argument on unknown names.
MomentKind parse_moment_kind(std::string_view name);
FormulaPath parse_formula_path(std::string_view name);

struct MomentResult {
  ComplexScalar value;
  FormulaPath path = FormulaPath::automatic;
  double err_estimate = 0.0;  // absolute
};

/// Throws Errc::order_out_of_range unless nu is finite and nu > -1.
void validate_order(double nu);

/// E{X^nu}; for X < 0 the power is |X|^nu e^(j pi nu) (principal branch).
MomentResult raw_moment(const NormalParams& p, double nu,
                        FormulaPath path = FormulaPath::automatic);

/// E{(X - mu)^nu}. Paths pcf, phi_pair, psi and integer are the raw-moment
/// forms at mu = 0 and give bit-identical results to raw_moment there.
MomentResult central_moment(const NormalParams& p, double nu,
                            FormulaPath path = FormulaPath::automatic);

// Two further Gamma forms of the central moment, one through cos(pi nu / 2)
// and one through (1 + e^(j pi nu)). Both report FormulaPath::gamma_form.
MomentResult central_moment_cosine_form(const NormalParams& p, double nu);
MomentResult central_moment_sign_form(const NormalParams& p, double nu);

/// E{|X|^nu}; real and positive.
MomentResult raw_abs_moment(const NormalParams& p, double nu);

/// E{|X - mu|^nu}; real, positive and independent of mu.
MomentResult central_abs_moment(const NormalParams& p, double nu);

/// Dispatch on q.kind. Absolute kinds accept only automatic or gamma_form.
MomentResult moment(const NormalParams& p, const MomentQuery& q,
                    FormulaPath path = FormulaPath::automatic);

struct PathEvaluation {
  FormulaPath path;
  std::string label;
  MomentResult result;
  double deviation = 0.0;  // max |value - other| over the other entries
};

struct ConsistencyReport {
  std::vector<PathEvaluation> entries;
  double max_deviation = 0.0;
  double tolerance = 0.0;  // 1e-10 * max(1, largest |value|)

  bool consistent() const { return max_deviation <= tolerance; }
};

/// Evaluates every raw-moment path valid for nu (and, when mu == 0, the
/// central Gamma forms too) and compares them pairwise.
ConsistencyReport consistency_report(const NormalParams& p, double nu);

}  // namespace nmoments
