#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace horo {

enum class ErrorKind {
  InvalidArgument,
  NonpositiveHeight,
  StepFailure,
  QuadratureFailure,
  BracketFailure,
  SearchExhausted,
  SeriesRadiusTooLarge,
  BranchMisclassified,
  InsufficientSamples,
  DegenerateStencil,
  DegenerateGrid,
  NewtonDiverged,
  FloorViolation,
  IoFailure,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonpositiveHeight: return "NonpositiveHeight";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::SeriesRadiusTooLarge: return "SeriesRadiusTooLarge";
    case ErrorKind::BranchMisclassified: return "BranchMisclassified";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::DegenerateStencil: return "DegenerateStencil";
    case ErrorKind::DegenerateGrid: return "DegenerateGrid";
    case ErrorKind::NewtonDiverged: return "NewtonDiverged";
    case ErrorKind::FloorViolation: return "FloorViolation";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Validation errors are caller mistakes; everything else is numerical.
  bool is_validation() const noexcept {
    return kind_ == ErrorKind::InvalidArgument || kind_ == ErrorKind::NonpositiveHeight ||
           kind_ == ErrorKind::DegenerateGrid || kind_ == ErrorKind::DegenerateStencil;
  }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorKind::InvalidArgument, what);
}

}  // namespace horo
