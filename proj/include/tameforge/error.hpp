#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tameforge {

enum class ErrorKind {
  NonFiniteEvaluation,
  NodeCollision,
  LengthMismatch,
  ZeroDirection,
  TooManyNodes,
  NotKernelInvariant,
  DimensionMismatch,
  FirstCoordinateMismatch,
  GenericityFailure,
  StageCollision,
  NotVolumePreserving,
  InjectivityViolation,
  ChartSingularity,
  OverflowGuard,
  OffVariety,
  DampingExhausted,
  DuplicatePoints,
  ScheduleInfeasible,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The kind is stable and is what the
/// CLI writes into the report's error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Stage index travels with StageCollision so callers can tell which shear
/// of a stage-wise solve failed.
class StageCollisionError : public Error {
 public:
  StageCollisionError(int stage, const std::string& what)
      : Error(ErrorKind::StageCollision, "stage " + std::to_string(stage) + ": " + what),
        stage_(stage) {}
  int stage() const noexcept { return stage_; }

 private:
  int stage_;
};

class DampingExhaustedError : public Error {
 public:
  DampingExhaustedError(double measured, double target)
      : Error(ErrorKind::DampingExhausted,
              "measured deviation " + std::to_string(measured) + " exceeds " +
                  std::to_string(target)),
        measured_(measured) {}
  double measured() const noexcept { return measured_; }

 private:
  double measured_;
};

}  // namespace tameforge
