#include "elastica/error.hpp"

namespace elastica {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidGrid: return "invalid-grid";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kUnknownPreset: return "unknown-preset";
    case ErrorCode::kDegenerateMesh: return "degenerate-mesh";
    case ErrorCode::kUnsupportedDimension: return "unsupported-dimension";
    case ErrorCode::kInconsistency: return "inconsistency";
    case ErrorCode::kNonFinite: return "non-finite";
    case ErrorCode::kInvalidMonitor: return "invalid-monitor";
    case ErrorCode::kSolverFailure: return "solver-failure";
    case ErrorCode::kAccuracy: return "accuracy";
    case ErrorCode::kMeshCollapse: return "mesh-collapse";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kBlowDown: return "blow-down";
    case ErrorCode::kUnsupportedReference: return "unsupported-reference";
    case ErrorCode::kGridMismatch: return "grid-mismatch";
    case ErrorCode::kUndefinedEoc: return "undefined-eoc";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace elastica
