#pragma once

#include <stdexcept>
#include <string>

namespace maximin {

enum class ErrorCode {
  IndexOutOfRange,
  EmptyGroup,
  NonFiniteData,
  DimensionMismatch,
  LengthMismatch,
  DegenerateVariance,
  WeightsInvalid,
  NotPositiveDefinite,
  InvalidArgument,
  NonConverged,
  AllGroupsNonpositive,
  Infeasible,
  InvalidSize,
  DegenerateBound,
  TooFewObservations,
  ParseError,
  RaggedRows,
  MissingColumn,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NonConvergedError : public Error {
 public:
  NonConvergedError(const std::string& message, double residual);
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace maximin
