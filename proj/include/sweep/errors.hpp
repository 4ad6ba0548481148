#pragma once

#include <stdexcept>
#include <string>

namespace sweep {

enum class ErrorCode {
  InvalidArgument,
  OutOfDomain,
  IterationLimit,
  Unbounded,
  UnsupportedPair,
  InfeasibleStart,
  PrescriptionInfeasible,
  MismatchedScenario,
  InvalidReparam,
  Parse,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-readable code; every failure in the library
/// surfaces as one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sweep
