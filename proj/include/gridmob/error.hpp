#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gridmob {

enum class ErrorCode {
  // configuration problems (CLI exit code 2)
  InvalidConfig,
  NonDivisibleDimensions,
  ObstacleOutOfBounds,
  OverlappingObstacles,
  DisconnectedEnvironment,
  ResolutionTooLow,
  // computation problems (CLI exit code 1)
  UnknownNode,
  UnreachableTarget,
  PathCountCapExceeded,
  DegeneratePair,
  DomainError,
  ShapeMismatch,
  GridTooLargeForReference,
};

std::string_view to_string(ErrorCode code);

// True for errors caused by user-supplied configuration rather than by the
// computation itself.
bool is_config_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gridmob
