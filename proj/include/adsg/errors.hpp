#pragma once

#include <stdexcept>
#include <string>

namespace adsg {

/// Domain error codes. The numeric values are part of the C API.
enum class ErrorCode : int {
  BadIndex = 10,
  NoPrincipalLog = 11,
  SamePoint = 12,
  NotPingPong = 13,
  NoContraction = 14,
  MaxIterations = 15,
  CoincidentPoints = 16,
  Infeasible = 17,
  NonHyperbolicBase = 18,
  StripsOverlap = 19,
  NotFilling = 20,
  NotAdmissible = 21,
  NoPositiveSolution = 22,
  InvalidArgument = 23,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace adsg
