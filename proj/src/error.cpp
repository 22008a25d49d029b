#include "dikin/error.hpp"

namespace dikin {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::ZeroRow: return "ZeroRow";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::IdenticalPoints: return "IdenticalPoints";
    case ErrorCode::UnboundedChord: return "UnboundedChord";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
  }
  return "Unknown";
}

}  // namespace dikin
