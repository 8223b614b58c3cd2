#include "nmoments/record.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>

namespace nmoments {
namespace {

bool needs_quotes(std::string_view v) {
  return v.empty() || v.find_first_of(" \t\"\\=") != std::string_view::npos;
}

std::string quote(std::string_view v) {
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

const std::string* find(const Record& record, std::string_view key) {
  for (const auto& [k, v] : record) {
    if (k == key) return &v;
  }
  return nullptr;
}

const std::string& require(const Record& record, std::string_view key) {
  const auto* v = find(record, key);
  if (v == nullptr) {
    throw Error(Errc::invalid_argument, "record is missing field '" + std::string(key) + "'");
  }
  return *v;
}

std::optional<double> optional_number(const Record& record, std::string_view key) {
  const auto* v = find(record, key);
  if (v == nullptr) return std::nullopt;
  return parse_number(*v);
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw Error(Errc::invalid_argument, "empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    throw Error(Errc::invalid_argument, "malformed number '" + s + "'");
  }
  return v;
}

std::string serialize(const Record& record) {
  std::string out;
  for (const auto& [k, v] : record) {
    if (!out.empty()) out += ' ';
    out += k;
    out += '=';
    out += needs_quotes(v) ? quote(v) : v;
  }
  return out;
}

Record parse_record(std::string_view line) {
  Record out;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    while (i < n && (line[i] == ' ' || line[i] == '\t' || line[i] == '\n' || line[i] == '\r')) ++i;
    if (i >= n) break;
    const std::size_t eq = line.find('=', i);
    if (eq == std::string_view::npos) {
      throw Error(Errc::invalid_argument, "record field without '='");
    }
    std::string key(line.substr(i, eq - i));
    i = eq + 1;
    std::string value;
    if (i < n && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < n) {
        const char c = line[i++];
        if (c == '\\' && i < n) {
          value += line[i++];
        } else if (c == '"') {
          closed = true;
          break;
        } else {
          value += c;
        }
      }
      if (!closed) throw Error(Errc::invalid_argument, "unterminated quoted value");
    } else {
      while (i < n && line[i] != ' ' && line[i] != '\t' && line[i] != '\n' && line[i] != '\r') {
        value += line[i++];
      }
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

Record to_record(const OutputRecord& r) {
  Record out{
      {"kind", r.kind},
      {"nu", format_number(r.nu)},
      {"mu", format_number(r.mu)},
      {"sigma", format_number(r.sigma)},
      {"value_re", format_number(r.value_re)},
      {"value_im", format_number(r.value_im)},
      {"path", r.path},
      {"err_estimate", format_number(r.err_estimate)},
  };
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) out.emplace_back(key, format_number(*v));
  };
  put("oracle_value_re", r.oracle_value_re);
  put("oracle_value_im", r.oracle_value_im);
  put("oracle_bound", r.oracle_bound);
  put("mc_value_re", r.mc_value_re);
  put("mc_value_im", r.mc_value_im);
  put("mc_bound", r.mc_bound);
  put("worst_deviation", r.worst_deviation);
  if (r.status) out.emplace_back("status", *r.status);
  return out;
}

OutputRecord output_record_from(const Record& record) {
  OutputRecord r;
  r.kind = require(record, "kind");
  r.nu = parse_number(require(record, "nu"));
  r.mu = parse_number(require(record, "mu"));
  r.sigma = parse_number(require(record, "sigma"));
  r.value_re = parse_number(require(record, "value_re"));
  r.value_im = parse_number(require(record, "value_im"));
  r.path = require(record, "path");
  r.err_estimate = parse_number(require(record, "err_estimate"));
  r.oracle_value_re = optional_number(record, "oracle_value_re");
  r.oracle_value_im = optional_number(record, "oracle_value_im");
  r.oracle_bound = optional_number(record, "oracle_bound");
  r.mc_value_re = optional_number(record, "mc_value_re");
  r.mc_value_im = optional_number(record, "mc_value_im");
  r.mc_bound = optional_number(record, "mc_bound");
  r.worst_deviation = optional_number(record, "worst_deviation");
  if (const auto* s = find(record, "status")) r.status = *s;
  return r;
}

Record to_record(const oracle::IdentityCheck& c) {
  Record out{
      {"identity", std::string(oracle::to_string(c.identity))},
      {"gamma", format_number(c.gamma_arg)},
      {"nu", format_number(c.nu)},
      {"lhs_re", format_number(c.lhs.real())},
      {"lhs_im", format_number(c.lhs.imag())},
      {"rhs_re", format_number(c.rhs.real())},
      {"rhs_im", format_number(c.rhs.imag())},
      {"lhs_bound", format_number(c.lhs_bound)},
      {"rel_deviation", format_number(c.rel_deviation)},
      {"status", c.ok ? "pass" : "fail"},
  };
  if (!c.error.empty()) out.emplace_back("error", c.error);
  return out;
}

}  // namespace nmoments
