#pragma once
#include <stdexcept>
#include <string>

namespace kobalab {

enum class ErrorCode {
  DimensionMismatch,
  NotInterior,
  ZeroCoordinate,
  InvalidArgument,
  SingularMatrix,
  Pole,
  GapExceeded,
  CertificateFailure,
  NotLiftable,
  QuadratureDepth,
  Degenerate,
  Unsupported,
  Schema,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::NotInterior: return "not-interior";
    case ErrorCode::ZeroCoordinate: return "zero-coordinate";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::SingularMatrix: return "singular-matrix";
    case ErrorCode::Pole: return "pole";
    case ErrorCode::GapExceeded: return "gap-exceeded";
    case ErrorCode::CertificateFailure: return "certificate-failure";
    case ErrorCode::NotLiftable: return "not-liftable";
    case ErrorCode::QuadratureDepth: return "quadrature-depth";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Schema: return "schema";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace kobalab
