#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nmoments/oracle.hpp"

// Line-oriented key=value records written by the CLI. Fields are separated by
// single spaces; values containing spaces or quotes are double-quoted with
// backslash escapes. Numbers use 17 significant digits so they re-parse to
// the same double.
namespace nmoments {

using Record = std::vector<std::pair<std::string, std::string>>;

std::string format_number(double v);
/// Throws Errc::invalid_argument unless the whole string is a number.
double parse_number(std::string_view text);

std::string serialize(const Record& record);
Record parse_record(std::string_view line);

struct OutputRecord {
  std::string kind;
  double nu = 0.0;
  double mu = 0.0;
  double sigma = 1.0;
  double value_re = 0.0;
  double value_im = 0.0;
  std::string path;
  double err_estimate = 0.0;
  std::optional<double> oracle_value_re;
  std::optional<double> oracle_value_im;
  std::optional<double> oracle_bound;
  // check-only fields
  std::optional<double> mc_value_re;
  std::optional<double> mc_value_im;
  std::optional<double> mc_bound;
  std::optional<double> worst_deviation;
  std::optional<std::string> status;

  bool operator==(const OutputRecord&) const = default;
};

Record to_record(const OutputRecord& r);
/// Throws Errc::invalid_argument on missing or malformed required fields.
OutputRecord output_record_from(const Record& record);

inline std::string serialize(const OutputRecord& r) { return serialize(to_record(r)); }
inline OutputRecord parse_output_record(std::string_view line) {
  return output_record_from(parse_record(line));
}

Record to_record(const oracle::IdentityCheck& c);

}  // namespace nmoments
