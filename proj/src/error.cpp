#include "mtum/error.hpp"

namespace mtum {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::InvalidBoundaries: return "InvalidBoundaries";
    case ErrorCode::InvalidCounts: return "InvalidCounts";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UndefinedBeyondLastCut: return "UndefinedBeyondLastCut";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::BelowThreshold: return "BelowThreshold";
    case ErrorCode::InvalidWindow: return "InvalidWindow";
    case ErrorCode::WindowBeyondCuts: return "WindowBeyondCuts";
    case ErrorCode::NonIdentifiableWindow: return "NonIdentifiableWindow";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::NonIdentifiable: return "NonIdentifiable";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace mtum
