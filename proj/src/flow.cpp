#include "elastica/flow.hpp"

#include <cmath>
#include <string>

#include "elastica/reference.hpp"

namespace elastica {

void validate(const RunConfig& cfg) {
  if (!(cfg.final_time > 0.0) || !std::isfinite(cfg.final_time)) {
    throw Error(ErrorCode::kConfig, "final time T must be positive");
  }
  if (cfg.steps < 1) throw Error(ErrorCode::kConfig, "step count m_T must be at least 1");
  if (cfg.record_stride < 1) throw Error(ErrorCode::kConfig, "record_stride must be at least 1");
  if (cfg.vertices < 3) {
    throw Error(ErrorCode::kConfig, "N must be at least 3, got " + std::to_string(cfg.vertices));
  }
  validate(cfg.scheme);
  const double product = cfg.scheme.delta * static_cast<double>(cfg.steps);
  if (std::abs(product - cfg.final_time) > 1e-12 * cfg.final_time) {
    throw Error(ErrorCode::kConfig, "delta * m_T does not match T");
  }
  if (cfg.reference == Reference::kCircle) {
    if (!std::holds_alternative<CirclePreset>(cfg.preset)) {
      throw Error(ErrorCode::kUnsupportedReference,
                  "the circle reference needs the equidistributed circle preset");
    }
    if (cfg.scheme.is_extended()) {
      throw Error(ErrorCode::kUnsupportedReference,
                  "the circle reference is only available for the Dirichlet scheme");
    }
  }
}

Diagnostics diagnose(const CurveState& x, const CurvatureField& y, const SchemeParams& p,
                     const Grid& grid) {
  const EdgeData e = edge_data(x, y);
  Diagnostics d;
  d.length = e.total_length();
  d.sigma = mesh_ratio(e);
  if (const auto* dp = std::get_if<DirichletParams>(&p.variant)) {
    d.energy = discrete_energy(x, y, dp->lambda, grid);
  } else {
    const auto& ep = std::get<ExtendedParams>(p.variant);
    d.monitor_dirichlet = monitor_dirichlet(x, grid, ep.monitor);
    d.energy = bending_energy(x, y) + ep.lambda_tilde * d.length +
               ep.epsilon * *d.monitor_dirichlet;
  }
  if (x.dim() == 2) d.rotation_index = rotation_index(x);
  return d;
}

StepSolution step(const CurveState& x, const CurvatureField& y, const SchemeParams& p,
                  const Grid& grid, SparseLu& solver, std::size_t step_index) {
  const LinearSystem sys = assemble(x, y, p, grid);
  StepSolution next = [&] {
    try {
      return solve(sys, solver);
    } catch (const Error& e) {
      throw Error(e.code(), "step " + std::to_string(step_index) + ": " + e.what(), step_index);
    }
  }();
  next.x.t = x.t + p.delta;
  try {
    check_nondegenerate(next.x);
  } catch (const Error& e) {
    const ErrorCode code =
        e.code() == ErrorCode::kNonFinite ? ErrorCode::kSolverFailure : ErrorCode::kMeshCollapse;
    throw Error(code, "step " + std::to_string(step_index) + ": " + e.what(), step_index);
  }
  if (!next.y.all_finite()) {
    throw Error(ErrorCode::kSolverFailure,
                "step " + std::to_string(step_index) + ": non-finite curvature", step_index);
  }
  return next;
}

StepSolution step(const CurveState& x, const CurvatureField& y, const SchemeParams& p,
                  const Grid& grid) {
  SparseLu solver;
  return step(x, y, p, grid, solver);
}

RunResult run(const RunConfig& cfg) {
  validate(cfg);
  const Grid grid = uniform_grid(cfg.vertices);
  const double delta = cfg.scheme.delta;

  CurveState x = sample_preset(cfg.preset, grid, cfg.dim);
  check_nondegenerate(x);
  CurvatureField y = init_curvature(x, grid);

  std::optional<CircleOde> ode;
  if (cfg.reference == Reference::kCircle) {
    const auto& circle = std::get<CirclePreset>(cfg.preset);
    ode = circle_radius_ode(CircleFlow::kDirichlet,
                            std::get<DirichletParams>(cfg.scheme.variant).lambda, circle.radius,
                            cfg.final_time, cfg.steps);
  }

  RunResult result;
  auto& traj = result.trajectory;
  traj.snapshots.reserve(cfg.steps / cfg.record_stride + 2);

  auto error_at = [&](std::size_t m) -> std::optional<double> {
    if (!ode) return std::nullopt;
    return lumped_squared_error(exact_circle_curvature_at(ode->radii[m], grid, cfg.dim), y);
  };
  auto record = [&](std::size_t m) {
    Snapshot s{m, x, y, diagnose(x, y, cfg.scheme, grid)};
    if (ode) s.diagnostics.err = traj.step_errors[m];
    traj.snapshots.push_back(std::move(s));
  };

  if (ode) traj.step_errors.push_back(*error_at(0));
  record(0);

  SparseLu solver;
  for (std::size_t m = 0; m < cfg.steps; ++m) {
    StepSolution next;
    try {
      next = step(x, y, cfg.scheme, grid, solver, m + 1);
    } catch (const Error& e) {
      result.failure = e.index() ? e : Error(e.code(), e.what(), m + 1);
      if (traj.snapshots.back().step != m) {
        try {
          record(m);
        } catch (const Error&) {
          // The last accepted state cannot be diagnosed; keep the earlier snapshots.
        }
      }
      return result;
    }
    x = std::move(next.x);
    y = std::move(next.y);
    x.t = static_cast<double>(m + 1) * delta;
    try {
      if (ode) traj.step_errors.push_back(*error_at(m + 1));
      if ((m + 1) % cfg.record_stride == 0 || m + 1 == cfg.steps) record(m + 1);
    } catch (const Error& e) {
      result.failure = Error(e.code(), e.what(), m + 1);
      return result;
    }
  }
  return result;
}

}  // namespace elastica
