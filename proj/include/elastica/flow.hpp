#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "elastica/error.hpp"
#include "elastica/linsolve.hpp"
#include "elastica/mesh.hpp"
#include "elastica/scheme.hpp"

namespace elastica {

enum class Reference {
  kNone,
  // Curvature error against the self-similar circle solution; needs the
  // circle preset and the Dirichlet variant.
  kCircle,
};

struct RunConfig {
  std::size_t vertices = 0;
  int dim = 2;
  CurvePreset preset = CirclePreset{};
  // scheme.delta is the step size; delta * steps must equal final_time.
  SchemeParams scheme;
  double final_time = 1.0;
  std::size_t steps = 1;
  std::size_t record_stride = 1;
  Reference reference = Reference::kNone;
};

// Throws kConfig for T <= 0, m_T < 1, record_stride < 1 or
// |delta * m_T - T| > 1e-12 T, kInvalidArgument for bad scheme weights.
void validate(const RunConfig& cfg);

struct Snapshot {
  std::size_t step = 0;
  CurveState x;
  CurvatureField y;
  Diagnostics diagnostics;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  // err^(m) for every step m = 0..m_T when a reference is tracked.
  std::vector<double> step_errors;
};

struct RunResult {
  Trajectory trajectory;
  // Set when the run stopped early; the last snapshot is then the last good
  // state and failure->index() is the step that failed.
  std::optional<Error> failure;

  bool completed() const { return !failure.has_value(); }
};

Diagnostics diagnose(const CurveState& x, const CurvatureField& y, const SchemeParams& p,
                     const Grid& grid);

// One time step; the result carries t + delta. Throws kMeshCollapse if the
// new polygon is degenerate, with index = step_index.
StepSolution step(const CurveState& x, const CurvatureField& y, const SchemeParams& p,
                  const Grid& grid, SparseLu& solver, std::size_t step_index = 1);
StepSolution step(const CurveState& x, const CurvatureField& y, const SchemeParams& p,
                  const Grid& grid);

// Throws for invalid configuration; mid-run failures are reported through
// RunResult::failure together with the partial trajectory.
RunResult run(const RunConfig& cfg);

}  // namespace elastica
