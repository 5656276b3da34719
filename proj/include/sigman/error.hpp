#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sigman {

enum class ErrorCode {
  DimensionMismatch,
  OutsideManifold,
  NormUnsupported,
  ChordLeavesShell,
  InvalidSpec,
  TooFewFactors,
  DisconnectedMesh,
  EmptySources,
  SubdivisionLimit,
  DegeneratePath,
  TooFewSamples,
  GridNotAtZero,
  EmptyList,
  NonpositiveSigma,
  InvalidPathPoint,
  Collision,
  MidChordCollision,
  IndexOutOfRange,
  SamplingExhausted,
  InvalidGraph,
  DisconnectedGraph,
  NonpositiveEntry,
  InfeasibleStart,
  NonFiniteObjective,
  UnsupportedManifold,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-status mapping) can branch without string parsing.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sigman
