#include "zerocap/error.hpp"

namespace zerocap {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::Io: return "Io";
    case ErrorCode::ClientTimeout: return "ClientTimeout";
    case ErrorCode::ClientProtocolError: return "ClientProtocolError";
    case ErrorCode::EmptyExtraction: return "EmptyExtraction";
    case ErrorCode::MalformedStructure: return "MalformedStructure";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::DegenerateRegion: return "DegenerateRegion";
    case ErrorCode::CollapsedPolygon: return "CollapsedPolygon";
    case ErrorCode::MissingMask: return "MissingMask";
    case ErrorCode::ParseFailure: return "ParseFailure";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::WrongCount: return "WrongCount";
    case ErrorCode::MalformedNumber: return "MalformedNumber";
    case ErrorCode::InfeasibleInfill: return "InfeasibleInfill";
    case ErrorCode::DegenerateGraph: return "DegenerateGraph";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::MissingGroundTruth: return "MissingGroundTruth";
    case ErrorCode::EmptySuite: return "EmptySuite";
    case ErrorCode::MissingFixture: return "MissingFixture";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace zerocap
