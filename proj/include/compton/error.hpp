#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace compton {

/// Machine-readable failure categories. Scans record these per grid point.
enum class ErrorCode {
  None = 0,
  DegenerateForward,
  NonPhysical,
  CollinearSingularity,
  NotLightlike,
  ZeroSpatialMomentum,
  IndexOutOfRange,
  AllNonPositive,
  GridTooCoarse,
  ContourNotClosed,
  CalibrationFailed,
  InvalidSpec,
  ImaginaryResidue,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::None: return "none";
    case ErrorCode::DegenerateForward: return "degenerate_forward";
    case ErrorCode::NonPhysical: return "non_physical";
    case ErrorCode::CollinearSingularity: return "collinear_singularity";
    case ErrorCode::NotLightlike: return "not_lightlike";
    case ErrorCode::ZeroSpatialMomentum: return "zero_spatial_momentum";
    case ErrorCode::IndexOutOfRange: return "index_out_of_range";
    case ErrorCode::AllNonPositive: return "all_non_positive";
    case ErrorCode::GridTooCoarse: return "grid_too_coarse";
    case ErrorCode::ContourNotClosed: return "contour_not_closed";
    case ErrorCode::CalibrationFailed: return "calibration_failed";
    case ErrorCode::InvalidSpec: return "invalid_spec";
    case ErrorCode::ImaginaryResidue: return "imaginary_residue";
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

}  // namespace compton
