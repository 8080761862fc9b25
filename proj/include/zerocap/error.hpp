#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zerocap {

enum class ErrorCode {
  MissingFile,
  ParseError,
  InvariantViolation,
  NonPositiveScale,
  Io,
  ClientTimeout,
  ClientProtocolError,
  EmptyExtraction,
  MalformedStructure,
  BackendUnavailable,
  DimensionMismatch,
  EmptyMask,
  DegenerateRegion,
  CollapsedPolygon,
  MissingMask,
  ParseFailure,
  OutOfBounds,
  WrongCount,
  MalformedNumber,
  InfeasibleInfill,
  DegenerateGraph,
  Timeout,
  MissingGroundTruth,
  EmptySuite,
  MissingFixture,
};

std::string_view to_string(ErrorCode code);

// Every library fault is reported through this type. what() is
// "<CodeName>: <detail>" so callers can grep either part.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace zerocap
