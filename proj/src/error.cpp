#include "tameforge/error.hpp"

namespace tameforge {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFiniteEvaluation: return "NonFiniteEvaluation";
    case ErrorKind::NodeCollision: return "NodeCollision";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ZeroDirection: return "ZeroDirection";
    case ErrorKind::TooManyNodes: return "TooManyNodes";
    case ErrorKind::NotKernelInvariant: return "NotKernelInvariant";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::FirstCoordinateMismatch: return "FirstCoordinateMismatch";
    case ErrorKind::GenericityFailure: return "GenericityFailure";
    case ErrorKind::StageCollision: return "StageCollision";
    case ErrorKind::NotVolumePreserving: return "NotVolumePreserving";
    case ErrorKind::InjectivityViolation: return "InjectivityViolation";
    case ErrorKind::ChartSingularity: return "ChartSingularity";
    case ErrorKind::OverflowGuard: return "OverflowGuard";
    case ErrorKind::OffVariety: return "OffVariety";
    case ErrorKind::DampingExhausted: return "DampingExhausted";
    case ErrorKind::DuplicatePoints: return "DuplicatePoints";
    case ErrorKind::ScheduleInfeasible: return "ScheduleInfeasible";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace tameforge
