#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mtum {

enum class ErrorCode {
  EmptySample,
  InvalidBoundaries,
  InvalidCounts,
  InvalidArgument,
  UndefinedBeyondLastCut,
  DegenerateInterval,
  BelowThreshold,
  InvalidWindow,
  WindowBeyondCuts,
  NonIdentifiableWindow,
  EmptyWindow,
  NoSolution,
  SolverFailure,
  NonIdentifiable,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this type. what() reads
// "<ErrorName>: <detail>" so the CLI can forward it to stderr unchanged.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mtum
