#include "dmin/error.hpp"

namespace dmin {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::NonOrientable: return "NonOrientable";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::HasBoundary: return "HasBoundary";
    case ErrorCode::DegenerateEdge: return "DegenerateEdge";
    case ErrorCode::BoundaryEdge: return "BoundaryEdge";
    case ErrorCode::BoundaryVertex: return "BoundaryVertex";
    case ErrorCode::InconsistentCrossRatios: return "InconsistentCrossRatios";
    case ErrorCode::DegenerateAnchor: return "DegenerateAnchor";
    case ErrorCode::NorthPole: return "NorthPole";
    case ErrorCode::NotSimplyConnected: return "NotSimplyConnected";
    case ErrorCode::ClosednessViolation: return "ClosednessViolation";
    case ErrorCode::NonPlanarFace: return "NonPlanarFace";
    case ErrorCode::ZeroLengthEdge: return "ZeroLengthEdge";
    case ErrorCode::AngleAtPi: return "AngleAtPi";
    case ErrorCode::SingularCorner: return "SingularCorner";
    case ErrorCode::NotTrivalent: return "NotTrivalent";
    case ErrorCode::FlatEdge: return "FlatEdge";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::NotIsothermic: return "NotIsothermic";
    case ErrorCode::QuadClosureViolation: return "QuadClosureViolation";
    case ErrorCode::ClosureViolation: return "ClosureViolation";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace dmin
