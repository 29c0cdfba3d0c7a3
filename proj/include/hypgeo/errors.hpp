#pragma once

#include <stdexcept>
#include <string>

namespace hypgeo {

enum class ErrorCode {
  DeterminantError,
  DegenerateDenominator,
  IdentityInput,
  OutsideDisk,
  NonPositiveEigenvalue,
  NotOnC,
  DomainError,
  LightLikeInput,
  NegativeTime,
  StepCountTooSmall,
  NoRootFound,
  DegenerateFunction,
  UndefinedAtEquator,
  DegenerateIdenticallyZero,
  NotTimeLike,
  OnCutLocus,
  IdentityTarget,
  NoConvergence,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::DeterminantError: return "DeterminantError";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::IdentityInput: return "IdentityInput";
    case ErrorCode::OutsideDisk: return "OutsideDisk";
    case ErrorCode::NonPositiveEigenvalue: return "NonPositiveEigenvalue";
    case ErrorCode::NotOnC: return "NotOnC";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::LightLikeInput: return "LightLikeInput";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::StepCountTooSmall: return "StepCountTooSmall";
    case ErrorCode::NoRootFound: return "NoRootFound";
    case ErrorCode::DegenerateFunction: return "DegenerateFunction";
    case ErrorCode::UndefinedAtEquator: return "UndefinedAtEquator";
    case ErrorCode::DegenerateIdenticallyZero: return "DegenerateIdenticallyZero";
    case ErrorCode::NotTimeLike: return "NotTimeLike";
    case ErrorCode::OnCutLocus: return "OnCutLocus";
    case ErrorCode::IdentityTarget: return "IdentityTarget";
    case ErrorCode::NoConvergence: return "NoConvergence";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Failures of an iterative method, as opposed to bad input.
  bool is_convergence_failure() const noexcept {
    return code_ == ErrorCode::NoConvergence || code_ == ErrorCode::NoRootFound;
  }

 private:
  ErrorCode code_;
};

}  // namespace hypgeo
