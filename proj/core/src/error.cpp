#include "barbill/error.hpp"

namespace barbill {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OutsideDisk: return "OutsideDisk";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::DegenerateBody: return "DegenerateBody";
    case ErrorCode::InvalidBody: return "InvalidBody";
    case ErrorCode::NonpositiveDistance: return "NonpositiveDistance";
    case ErrorCode::InfeasibleSides: return "InfeasibleSides";
    case ErrorCode::IterationBudgetExceeded: return "IterationBudgetExceeded";
    case ErrorCode::InvalidRational: return "InvalidRational";
    case ErrorCode::OutOfTheoreticalRange: return "OutOfTheoreticalRange";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegenerateU: return "DegenerateU";
    case ErrorCode::PointOnLine: return "PointOnLine";
    case ErrorCode::NotInArc: return "NotInArc";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

bool is_internal(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OutOfTheoreticalRange:
    case ErrorCode::NoWitness:
    case ErrorCode::InvariantViolation:
      return true;
    default:
      return false;
  }
}

}  // namespace barbill
