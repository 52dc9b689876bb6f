#pragma once

// Analytic circle solutions, curvature error functionals and experimental
// orders of convergence.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "elastica/flow.hpp"
#include "elastica/mesh.hpp"

namespace elastica {

// Radius laws for x(t, u) = R(t) (cos u, sin u):
//   kDirichlet: R' = 1/(2R^3) - lambda,          fixed point (2 lambda)^(-1/3)
//   kLength:    R' = 1/(2R^3) - lambda_tilde/R,  fixed point (2 lambda_tilde)^(-1/2)
enum class CircleFlow { kDirichlet, kLength };

struct CircleOde {
  CircleFlow flow = CircleFlow::kDirichlet;
  double parameter = 0.5;
  double r0 = 1.0;
  std::vector<double> times;  // t^(m) = m T / m_T
  std::vector<double> radii;  // R(t^(m))
};

double circle_radius_rate(CircleFlow flow, double parameter, double radius);
double circle_fixed_point(CircleFlow flow, double parameter);

// Classical RK4 with `substeps` steps per flow step. Throws kInvalidArgument
// for non-positive inputs and kBlowDown if R leaves (0, inf).
CircleOde circle_radius_ode(CircleFlow flow, double parameter, double r0, double final_time,
                            std::size_t steps, std::size_t substeps = 10);

// Exact nodal curvature y(t^(m), u_j) = -(cos u_j, sin u_j) / R(t^(m)) for
// every time level. Throws kUnsupportedReference unless the preset is the
// equidistributed circle.
struct ExactCurvature {
  std::vector<double> times;
  std::vector<CurvatureField> fields;
};
ExactCurvature exact_circle_curvature(const CircleOde& ode, const Grid& grid,
                                      const CurvePreset& preset, int dim);
CurvatureField exact_circle_curvature_at(double radius, const Grid& grid, int dim);

// (2 pi / N) sum_j |exact_j - discrete_j|^2; no square root.
double lumped_squared_error(const CurvatureField& exact, const CurvatureField& discrete);

struct CurvatureErrors {
  std::vector<std::size_t> steps;
  std::vector<double> series;
  // Max over snapshots with step >= 1 (0 if there are none).
  double max_error = 0.0;
};

// Throws kGridMismatch if snapshot sizes, steps or times disagree with the
// reference.
CurvatureErrors curvature_error(const Trajectory& trajectory, const ExactCurvature& exact);

struct EocRow {
  std::size_t vertices = 0;
  double h = 0.0;
  std::size_t steps = 0;
  double delta = 0.0;
  double err = 0.0;
  std::optional<double> eoc;
};

struct ConvergenceSample {
  std::size_t vertices = 0;
  std::size_t steps = 0;
  double delta = 0.0;
  double err = 0.0;
};

// eoc_k = log(err_{k-1}/err_k) / log(h_{k-1}/h_k), h = 2 pi / N. Throws
// kUndefinedEoc for err <= 0 and kInvalidArgument unless N strictly increases.
std::vector<EocRow> eoc_table(std::span<const ConvergenceSample> samples);

// Observed order between consecutive rows of an arbitrary error sequence.
std::vector<double> observed_orders(std::span<const double> h, std::span<const double> err);

}  // namespace elastica
