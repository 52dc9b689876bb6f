#include "elastica/reference.hpp"

#include <cmath>
#include <string>

#include "elastica/error.hpp"

namespace elastica {

double circle_radius_rate(CircleFlow flow, double parameter, double radius) {
  const double bending = 1.0 / (2.0 * radius * radius * radius);
  return flow == CircleFlow::kDirichlet ? bending - parameter : bending - parameter / radius;
}

double circle_fixed_point(CircleFlow flow, double parameter) {
  return flow == CircleFlow::kDirichlet ? 1.0 / std::cbrt(2.0 * parameter)
                                        : 1.0 / std::sqrt(2.0 * parameter);
}

CircleOde circle_radius_ode(CircleFlow flow, double parameter, double r0, double final_time,
                            std::size_t steps, std::size_t substeps) {
  if (!(parameter > 0.0) || !(r0 > 0.0) || !(final_time > 0.0) || steps < 1 || substeps < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "circle ODE needs positive parameter, R0, T and step counts");
  }
  CircleOde ode{flow, parameter, r0, {}, {}};
  ode.times.resize(steps + 1);
  ode.radii.resize(steps + 1);
  const double delta = final_time / static_cast<double>(steps);
  const double dt = delta / static_cast<double>(substeps);
  auto f = [&](double r) { return circle_radius_rate(flow, parameter, r); };

  double r = r0;
  ode.times[0] = 0.0;
  ode.radii[0] = r;
  for (std::size_t m = 1; m <= steps; ++m) {
    for (std::size_t s = 0; s < substeps; ++s) {
      const double k1 = f(r);
      const double k2 = f(r + 0.5 * dt * k1);
      const double k3 = f(r + 0.5 * dt * k2);
      const double k4 = f(r + dt * k3);
      r += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!(r > 0.0) || !std::isfinite(r)) {
        throw Error(ErrorCode::kBlowDown,
                    "circle radius left (0, inf) near t = " +
                        std::to_string(static_cast<double>(m) * delta),
                    m);
      }
    }
    ode.times[m] = static_cast<double>(m) * delta;
    ode.radii[m] = r;
  }
  return ode;
}

CurvatureField exact_circle_curvature_at(double radius, const Grid& grid, int dim) {
  CurvatureField y(dim, grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double u = grid.node(j);
    y[j][0] = -std::cos(u) / radius;
    y[j][1] = -std::sin(u) / radius;
  }
  return y;
}

ExactCurvature exact_circle_curvature(const CircleOde& ode, const Grid& grid,
                                      const CurvePreset& preset, int dim) {
  if (!std::holds_alternative<CirclePreset>(preset)) {
    throw Error(ErrorCode::kUnsupportedReference,
                "exact curvature is only known for the '" + std::string("circle") +
                    "' preset, not '" + std::string(preset_name(preset)) + "'");
  }
  ExactCurvature exact;
  exact.times = ode.times;
  exact.fields.reserve(ode.radii.size());
  for (double r : ode.radii) exact.fields.push_back(exact_circle_curvature_at(r, grid, dim));
  return exact;
}

double lumped_squared_error(const CurvatureField& exact, const CurvatureField& discrete) {
  if (exact.size() != discrete.size() || exact.dim() != discrete.dim() || exact.size() == 0) {
    throw Error(ErrorCode::kGridMismatch, "curvature fields differ in size or dimension");
  }
  const auto& a = exact.values();
  const auto& b = discrete.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return kTwoPi / static_cast<double>(exact.size()) * sum;
}

CurvatureErrors curvature_error(const Trajectory& trajectory, const ExactCurvature& exact) {
  CurvatureErrors out;
  for (const auto& snap : trajectory.snapshots) {
    if (snap.step >= exact.fields.size()) {
      throw Error(ErrorCode::kGridMismatch,
                  "snapshot step " + std::to_string(snap.step) + " is beyond the reference");
    }
    const double t_ref = exact.times[snap.step];
    if (std::abs(snap.x.t - t_ref) > 1e-12 * std::max(1.0, std::abs(t_ref))) {
      throw Error(ErrorCode::kGridMismatch,
                  "snapshot time does not match the reference time grid", snap.step);
    }
    const double e = lumped_squared_error(exact.fields[snap.step], snap.y);
    out.steps.push_back(snap.step);
    out.series.push_back(e);
    if (snap.step >= 1) out.max_error = std::max(out.max_error, e);
  }
  return out;
}

std::vector<double> observed_orders(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size()) {
    throw Error(ErrorCode::kInvalidArgument, "h and err sequences differ in length");
  }
  std::vector<double> orders;
  for (std::size_t k = 1; k < h.size(); ++k) {
    if (!(err[k - 1] > 0.0) || !(err[k] > 0.0)) {
      throw Error(ErrorCode::kUndefinedEoc, "errors must be positive to form an order", k);
    }
    orders.push_back(std::log(err[k - 1] / err[k]) / std::log(h[k - 1] / h[k]));
  }
  return orders;
}

std::vector<EocRow> eoc_table(std::span<const ConvergenceSample> samples) {
  if (samples.empty()) throw Error(ErrorCode::kInvalidArgument, "no convergence samples");
  std::vector<EocRow> rows;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    if (!(s.err > 0.0)) {
      throw Error(ErrorCode::kUndefinedEoc,
                  "error for N = " + std::to_string(s.vertices) + " is not positive", k);
    }
    if (k > 0 && s.vertices <= samples[k - 1].vertices) {
      throw Error(ErrorCode::kInvalidArgument, "N must be strictly increasing", k);
    }
    EocRow row{s.vertices, kTwoPi / static_cast<double>(s.vertices), s.steps, s.delta, s.err,
               std::nullopt};
    if (k > 0) {
      row.eoc = std::log(rows[k - 1].err / row.err) / std::log(rows[k - 1].h / row.h);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace elastica
