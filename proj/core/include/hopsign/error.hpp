#pragma once

#include <stdexcept>
#include <string>

namespace hopsign {

enum class ErrorCode {
  invalid_argument,
  invalid_amplitude,
  out_of_domain,
  parameter_out_of_range,
  ceiling_exceeded,
  solver_failure,
  io_failure,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `detail()` carries an integer payload
/// whose meaning depends on the code: the minimal admissible `d` for
/// parameter_out_of_range from decay_check, the unconverged row index for
/// solver_failure, the iteration count for a root-iteration failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, long detail = -1)
      : std::runtime_error(what), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  long detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  long detail_;
};

}  // namespace hopsign
