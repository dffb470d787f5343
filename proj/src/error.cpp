#include "topsel/error.hpp"

namespace topsel {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidSpec: return "invalid-spec";
    case ErrorCode::InvalidMatrix: return "invalid-matrix";
    case ErrorCode::InvalidWeight: return "invalid-weight";
    case ErrorCode::IncompleteSkeleton: return "incomplete-skeleton";
    case ErrorCode::InvalidDegree: return "invalid-degree";
    case ErrorCode::InvalidInterval: return "invalid-interval";
    case ErrorCode::InvalidComplex: return "invalid-complex";
    case ErrorCode::InvalidOrder: return "invalid-order";
    case ErrorCode::InvalidWindow: return "invalid-window";
    case ErrorCode::InvalidVector: return "invalid-vector";
    case ErrorCode::InvalidResolution: return "invalid-resolution";
    case ErrorCode::Parse: return "parse-error";
    case ErrorCode::Io: return "io-error";
    case ErrorCode::Numeric: return "numeric-error";
    case ErrorCode::TrialFailures: return "trial-failures";
  }
  return "unknown";
}

}  // namespace topsel
