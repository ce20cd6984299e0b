#include "maximin/error.hpp"

namespace maximin {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::NonFiniteData: return "NonFiniteData";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::WeightsInvalid: return "WeightsInvalid";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonConverged: return "NonConverged";
    case ErrorCode::AllGroupsNonpositive: return "AllGroupsNonpositive";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::InvalidSize: return "InvalidSize";
    case ErrorCode::DegenerateBound: return "DegenerateBound";
    case ErrorCode::TooFewObservations: return "TooFewObservations";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

NonConvergedError::NonConvergedError(const std::string& message, double residual)
    : Error(ErrorCode::NonConverged, message + " (residual " + std::to_string(residual) + ")"),
      residual_(residual) {}

}  // namespace maximin
