#pragma once

#include <stdexcept>
#include <string>

namespace nmoments {

enum class Errc {
  pole,                 // Gamma evaluated at a nonpositive integer
  overflow,             // result outside double range
  domain,               // argument outside the supported domain
  no_convergence,       // series did not converge within max_terms
  order_out_of_range,   // nu <= -1
  invalid_path,         // formula path not valid for the requested order
  tolerance_not_met,    // adaptive quadrature could not reach its target
  invalid_argument,     // malformed control parameters
};

const char* to_string(Errc code) noexcept;

/// Single exception type for the library; code() carries the category and
/// what() a diagnostic that names the violated condition.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace nmoments
