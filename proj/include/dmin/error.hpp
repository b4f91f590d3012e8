#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dmin {

/// Stable error codes. The CLI reports them verbatim, so the spelling is part
/// of the interface.
enum class ErrorCode {
  NonManifold,
  NonOrientable,
  DegenerateFace,
  HasBoundary,
  DegenerateEdge,
  BoundaryEdge,
  BoundaryVertex,
  InconsistentCrossRatios,
  DegenerateAnchor,
  NorthPole,
  NotSimplyConnected,
  ClosednessViolation,
  NonPlanarFace,
  ZeroLengthEdge,
  AngleAtPi,
  SingularCorner,
  NotTrivalent,
  FlatEdge,
  DegeneratePair,
  NotIsothermic,
  QuadClosureViolation,
  ClosureViolation,
  UnknownKind,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dmin
