#pragma once

#include <stdexcept>
#include <string>

namespace topsel {

/// Failure categories shared by the C++ API and the C status codes.
enum class ErrorCode {
  InvalidArgument = 1,
  InvalidSpec,
  InvalidMatrix,
  InvalidWeight,
  IncompleteSkeleton,
  InvalidDegree,
  InvalidInterval,
  InvalidComplex,
  InvalidOrder,
  InvalidWindow,
  InvalidVector,
  InvalidResolution,
  Parse,
  Io,
  Numeric,
  TrialFailures,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace topsel
