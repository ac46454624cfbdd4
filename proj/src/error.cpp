#include "gridmob/error.hpp"

namespace gridmob {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NonDivisibleDimensions: return "NonDivisibleDimensions";
    case ErrorCode::ObstacleOutOfBounds: return "ObstacleOutOfBounds";
    case ErrorCode::OverlappingObstacles: return "OverlappingObstacles";
    case ErrorCode::DisconnectedEnvironment: return "DisconnectedEnvironment";
    case ErrorCode::ResolutionTooLow: return "ResolutionTooLow";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::UnreachableTarget: return "UnreachableTarget";
    case ErrorCode::PathCountCapExceeded: return "PathCountCapExceeded";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::GridTooLargeForReference: return "GridTooLargeForReference";
  }
  return "UnknownError";
}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::NonDivisibleDimensions:
    case ErrorCode::ObstacleOutOfBounds:
    case ErrorCode::OverlappingObstacles:
    case ErrorCode::DisconnectedEnvironment:
    case ErrorCode::ResolutionTooLow:
      return true;
    default:
      return false;
  }
}

}  // namespace gridmob
