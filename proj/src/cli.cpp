#include "nmoments/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "nmoments/moments.hpp"
#include "nmoments/oracle.hpp"
#include "nmoments/record.hpp"

namespace nmoments::cli {
namespace {

struct MomentOptions {
  std::string kind;
  double nu = 0.0;
  double mu = 0.0;
  double sigma = 1.0;
  std::string method = "auto";
  bool pretty = false;
};

struct CheckOptions {
  std::uint64_t seed = 20240917;
  std::size_t samples = 0;
  double tol_scale = 1.0;
};

void add_moment_options(CLI::App* cmd, MomentOptions& o) {
  cmd->add_option("--kind", o.kind, "Moment family")
      ->required()
      ->check(CLI::IsMember({"raw", "central", "abs", "central-abs"}));
  cmd->add_option("--nu", o.nu, "Order, nu > -1")->required();
  cmd->add_option("--mu", o.mu, "Mean")->capture_default_str();
  cmd->add_option("--sigma", o.sigma, "Standard deviation")->capture_default_str();
  cmd->add_option("--method", o.method, "Formula path")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "pcf", "phi-pair", "psi", "integer", "gamma-form"}));
  cmd->add_flag("--pretty", o.pretty, "Aligned key/value lines instead of one record");
}

void print(std::ostream& out, const OutputRecord& rec, bool pretty) {
  const Record fields = to_record(rec);
  if (!pretty) {
    out << serialize(fields) << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& f : fields) width = std::max(width, f.first.size());
  for (const auto& [k, v] : fields) {
    out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  }
}

OutputRecord make_record(const MomentOptions& o, const MomentResult& r) {
  OutputRecord rec;
  rec.kind = o.kind;
  rec.nu = o.nu;
  rec.mu = o.mu;
  rec.sigma = o.sigma;
  rec.value_re = r.value.real();
  rec.value_im = r.value.imag();
  rec.path = std::string(to_string(r.path));
  rec.err_estimate = r.err_estimate;
  return rec;
}

int cmd_compute(const MomentOptions& o, std::ostream& out) {
  const NormalParams p{o.mu, o.sigma};
  const MomentQuery q{parse_moment_kind(o.kind), o.nu};
  const MomentResult r = moment(p, q, parse_formula_path(o.method));
  print(out, make_record(o, r), o.pretty);
  return kExitOk;
}

int cmd_check(const MomentOptions& o, const CheckOptions& c, std::ostream& out,
              std::ostream& err) {
  const NormalParams p{o.mu, o.sigma};
  const MomentQuery q{parse_moment_kind(o.kind), o.nu};
  const MomentResult r = moment(p, q, parse_formula_path(o.method));
  OutputRecord rec = make_record(o, r);

  double path_dev = 0.0;
  double path_tol = 0.0;
  if (q.kind == MomentKind::raw || q.kind == MomentKind::central) {
    const NormalParams at = q.kind == MomentKind::raw ? p : NormalParams{0.0, o.sigma};
    const ConsistencyReport report = consistency_report(at, o.nu);
    path_dev = report.max_deviation;
    path_tol = report.tolerance;
  }

  oracle::OracleEstimate quad;
  try {
    quad = oracle::quad_moment(p, q);
  } catch (const Error& e) {
    if (e.code() != Errc::tolerance_not_met) throw;
    err << "check failed: oracle could not certify the value: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  rec.oracle_value_re = quad.value.real();
  rec.oracle_value_im = quad.value.imag();
  rec.oracle_bound = quad.abs_error_bound;
  const double oracle_dev = std::abs(r.value - quad.value);
  const double oracle_tol = quad.abs_error_bound + 1e-9 * std::abs(quad.value);

  double mc_dev = 0.0;
  double mc_tol = 0.0;
  if (c.samples > 0) {
    const auto mc = oracle::mc_moment(p, q, c.samples, c.seed);
    rec.mc_value_re = mc.value.real();
    rec.mc_value_im = mc.value.imag();
    rec.mc_bound = mc.abs_error_bound;
    mc_dev = std::abs(r.value - mc.value);
    mc_tol = 4.0 * mc.abs_error_bound;
  }

  const bool pass = path_dev <= c.tol_scale * path_tol &&
                    oracle_dev <= c.tol_scale * oracle_tol && mc_dev <= c.tol_scale * mc_tol;
  rec.worst_deviation = std::max({path_dev, oracle_dev, mc_dev});
  rec.status = pass ? "pass" : "fail";
  print(out, rec, o.pretty);
  if (!pass) {
    err << "check failed: worst deviation " << format_number(*rec.worst_deviation)
        << " (paths " << format_number(path_dev) << " allowed "
        << format_number(c.tol_scale * path_tol) << "; oracle " << format_number(oracle_dev)
        << " allowed " << format_number(c.tol_scale * oracle_tol);
    if (c.samples > 0) {
      err << "; monte carlo " << format_number(mc_dev) << " allowed "
          << format_number(c.tol_scale * mc_tol);
    }
    err << ")\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_table(double sigma, std::ostream& out) {
  const NormalParams p{0.0, sigma};
  std::vector<double> orders;
  for (int n = 0; n <= 8; ++n) orders.push_back(n);
  for (double f : {0.5, 1.5, 2.5}) orders.push_back(f);

  char line[160];
  std::snprintf(line, sizeof line, "%-5s  %-24s  %-24s  %-24s\n", "nu", "central_re",
                "central_im", "central_abs");
  out << line;
  for (double nu : orders) {
    const auto c = central_moment(p, nu);
    const auto a = central_abs_moment(p, nu);
    std::snprintf(line, sizeof line, "%-5g  %-24.17g  %-24.17g  %-24.17g\n", nu,
                  c.value.real(), c.value.imag(), a.value.real());
    out << line;
  }
  return kExitOk;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Raw, central and absolute moments of the normal distribution", "nmoments"};
  app.require_subcommand(1, 1);

  MomentOptions compute_opts;
  auto* compute = app.add_subcommand("compute", "Evaluate one moment");
  add_moment_options(compute, compute_opts);

  MomentOptions check_opts;
  CheckOptions check_extra;
  auto* check = app.add_subcommand(
      "check", "Evaluate a moment and cross-check every formula path against the oracles");
  add_moment_options(check, check_opts);
  check->add_option("--seed", check_extra.seed, "Monte Carlo seed")->capture_default_str();
  check->add_option("--samples", check_extra.samples,
                    "Monte Carlo sample count (0 skips the sampling check, else >= 1000)")
      ->capture_default_str();
  check->add_option("--tol-scale", check_extra.tol_scale,
                    "Multiplier on every tolerance (0 demands exact agreement)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  double table_sigma = 1.0;
  auto* table = app.add_subcommand("table", "Central and central-absolute reference table");
  table->add_option("--sigma", table_sigma, "Standard deviation")->capture_default_str();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; every other parse failure is usage.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compute->parsed()) return cmd_compute(compute_opts, out);
    if (check->parsed()) return cmd_check(check_opts, check_extra, out, err);
    return cmd_table(table_sigma, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace nmoments::cli
