#pragma once

#include <stdexcept>
#include <string>

namespace accompany {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  InvalidScheme,
  SupportViolation,
  MeanViolation,
  WeightViolation,
  SpectralSupportViolation,
  MomentMismatch,
  NonPSDCovariance,
  GaussianNotExact,
  SupportExplosion,
  ZeroNormal,
  ZeroDirection,
  NegativeLambda,
  Infeasible,
  NonConvergence,
  UnsupportedDimension,
  DegenerateInput,
  EmptyMeasure,
  EmptyFamily,
  NonMonotoneDetected,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidScheme: return "InvalidScheme";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::MeanViolation: return "MeanViolation";
    case ErrorCode::WeightViolation: return "WeightViolation";
    case ErrorCode::SpectralSupportViolation: return "SpectralSupportViolation";
    case ErrorCode::MomentMismatch: return "MomentMismatch";
    case ErrorCode::NonPSDCovariance: return "NonPSDCovariance";
    case ErrorCode::GaussianNotExact: return "GaussianNotExact";
    case ErrorCode::SupportExplosion: return "SupportExplosion";
    case ErrorCode::ZeroNormal: return "ZeroNormal";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::NegativeLambda: return "NegativeLambda";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::EmptyMeasure: return "EmptyMeasure";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::NonMonotoneDetected: return "NonMonotoneDetected";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace accompany
