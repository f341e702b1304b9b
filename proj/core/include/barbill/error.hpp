#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace barbill {

enum class ErrorCode {
  OutsideDisk,
  CoincidentPoints,
  DegenerateBody,
  InvalidBody,
  NonpositiveDistance,
  InfeasibleSides,
  IterationBudgetExceeded,
  InvalidRational,
  OutOfTheoreticalRange,
  OutOfRange,
  DegenerateU,
  PointOnLine,
  NotInArc,
  PreconditionFailed,
  NoWitness,
  InvariantViolation,
};

/// Stable machine-readable name, e.g. "PointOnLine".
std::string_view to_string(ErrorCode code) noexcept;

/// True for codes that indicate a bug or a broken theorem rather than bad input.
bool is_internal(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace barbill
