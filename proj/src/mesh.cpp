#include "elastica/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "elastica/error.hpp"

namespace elastica {

// ---------------------------------------------------------------------------
// Grid

Grid::Grid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 4) {
    throw Error(ErrorCode::kInvalidGrid,
                "grid needs at least 3 elements, got " +
                    std::to_string(nodes_.empty() ? 0 : nodes_.size() - 1));
  }
  if (nodes_.front() != 0.0) {
    throw Error(ErrorCode::kInvalidGrid, "grid must start at u = 0");
  }
  widths_.resize(nodes_.size() - 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < widths_.size(); ++k) {
    widths_[k] = nodes_[k + 1] - nodes_[k];
    if (!(widths_[k] > 0.0) || !std::isfinite(widths_[k])) {
      throw Error(ErrorCode::kInvalidGrid,
                  "grid width " + std::to_string(k) + " is not positive", k);
    }
    sum += widths_[k];
  }
  if (std::abs(sum - kTwoPi) > 1e-12 || std::abs(nodes_.back() - kTwoPi) > 1e-12) {
    throw Error(ErrorCode::kInvalidGrid, "grid widths must sum to 2*pi");
  }
}

bool Grid::is_uniform() const {
  const double h = kTwoPi / static_cast<double>(size());
  return std::all_of(widths_.begin(), widths_.end(),
                     [h](double w) { return std::abs(w - h) <= 1e-14; });
}

Grid uniform_grid(std::size_t n) {
  if (n < 3) {
    throw Error(ErrorCode::kInvalidGrid,
                "uniform grid needs N >= 3, got " + std::to_string(n));
  }
  std::vector<double> nodes(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    nodes[j] = static_cast<double>(j) * kTwoPi / static_cast<double>(n);
  }
  nodes[n] = kTwoPi;
  return Grid(std::move(nodes));
}

// ---------------------------------------------------------------------------
// NodalVectors

NodalVectors::NodalVectors(int dim, std::size_t count)
    : dim_(dim), values_(static_cast<std::size_t>(dim) * count, 0.0) {}

NodalVectors::NodalVectors(int dim, std::vector<double> values)
    : dim_(dim), values_(std::move(values)) {
  if (dim <= 0 || values_.size() % static_cast<std::size_t>(dim) != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "nodal vector data is not a multiple of the dimension");
  }
}

bool NodalVectors::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

// ---------------------------------------------------------------------------
// Edge geometry

EdgeData::EdgeData(int dim, std::vector<double> lengths,
                   std::vector<double> tangents, std::vector<double> projectors,
                   std::vector<double> weights)
    : dim_(dim),
      lengths_(std::move(lengths)),
      tangents_(std::move(tangents)),
      projectors_(std::move(projectors)),
      weights_(std::move(weights)) {}

double EdgeData::total_length() const {
  double sum = 0.0;
  for (double q : lengths_) sum += q;
  return sum;
}

namespace {

double edge_length(const CurveState& x, std::size_t k) {
  const auto a = x[k];
  const auto b = x[wrap(static_cast<std::ptrdiff_t>(k) + 1, x.size())];
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double d = b[c] - a[c];
    s += d * d;
  }
  return std::sqrt(s);
}

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return s;
}

}  // namespace

double polygon_length(const CurveState& x) {
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) sum += edge_length(x, k);
  return sum;
}

void check_nondegenerate(const CurveState& x) {
  if (x.dim() != 2 && x.dim() != 3) {
    throw Error(ErrorCode::kUnsupportedDimension,
                "curves must live in R^2 or R^3, got dim " + std::to_string(x.dim()));
  }
  if (x.size() < 3) {
    throw Error(ErrorCode::kInvalidGrid, "a closed polygon needs at least 3 vertices");
  }
  if (!x.all_finite()) {
    throw Error(ErrorCode::kNonFinite, "curve has non-finite coordinates");
  }
  const double floor = kDegenerateEdgeFraction * polygon_length(x);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(edge_length(x, k) > floor)) {
      throw Error(ErrorCode::kDegenerateMesh,
                  "edge " + std::to_string(k) + " between vertices " +
                      std::to_string(k) + " and " +
                      std::to_string(wrap(static_cast<std::ptrdiff_t>(k) + 1, x.size())) +
                      " has collapsed",
                  k);
    }
  }
}

EdgeData edge_data(const CurveState& x, const CurvatureField& y_prev) {
  check_nondegenerate(x);
  const std::size_t n_vert = x.size();
  const bool has_y = y_prev.size() > 0;
  if (has_y && (y_prev.size() != n_vert || y_prev.dim() != x.dim())) {
    throw Error(ErrorCode::kGridMismatch,
                "curvature field does not match the curve's size or dimension");
  }
  if (has_y && !y_prev.all_finite()) {
    throw Error(ErrorCode::kNonFinite, "curvature field has non-finite entries");
  }

  const auto n = static_cast<std::size_t>(x.dim());
  std::vector<double> q(n_vert), tau(n_vert * n), proj(n_vert * n * n), d(n_vert, 0.0);
  for (std::size_t k = 0; k < n_vert; ++k) {
    const std::size_t k1 = wrap(static_cast<std::ptrdiff_t>(k) + 1, n_vert);
    q[k] = edge_length(x, k);
    for (std::size_t c = 0; c < n; ++c) {
      tau[k * n + c] = (x[k1][c] - x[k][c]) / q[k];
    }
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        proj[k * n * n + r * n + c] =
            (r == c ? 1.0 : 0.0) - tau[k * n + r] * tau[k * n + c];
      }
    }
    if (has_y) {
      d[k] = (squared_norm(y_prev[k]) + squared_norm(y_prev[k1])) / (4.0 * q[k]);
    }
  }
  return EdgeData(x.dim(), std::move(q), std::move(tau), std::move(proj), std::move(d));
}

EdgeData edge_data(const CurveState& x) { return edge_data(x, CurvatureField{}); }

// ---------------------------------------------------------------------------
// Scalar diagnostics

double bending_energy(const CurveState& x, const CurvatureField& y) {
  check_nondegenerate(x);
  if (y.size() != x.size() || y.dim() != x.dim()) {
    throw Error(ErrorCode::kGridMismatch,
                "curvature field does not match the curve's size or dimension");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const std::size_t k1 = wrap(static_cast<std::ptrdiff_t>(k) + 1, x.size());
    sum += edge_length(x, k) * (squared_norm(y[k]) + squared_norm(y[k1])) / 2.0;
  }
  return 0.5 * sum;
}

double dirichlet_energy(const CurveState& x, const Grid& grid) {
  check_nondegenerate(x);
  if (grid.size() != x.size()) {
    throw Error(ErrorCode::kGridMismatch, "grid and curve sizes differ");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double q = edge_length(x, k);
    sum += q * q / grid.width(k);
  }
  return 0.5 * sum;
}

double discrete_energy(const CurveState& x, const CurvatureField& y,
                       double lambda, const Grid& grid) {
  return bending_energy(x, y) + lambda * dirichlet_energy(x, grid);
}

double mesh_ratio(const EdgeData& e) {
  const auto q = e.lengths();
  const auto [lo, hi] = std::minmax_element(q.begin(), q.end());
  return *hi / *lo;
}

int rotation_index(const CurveState& x) {
  if (x.dim() != 2) {
    throw Error(ErrorCode::kUnsupportedDimension,
                "rotation index is only defined for planar curves");
  }
  const EdgeData e = edge_data(x);
  double turning = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const auto a = e.tangent(k);
    const auto b = e.tangent(wrap(static_cast<std::ptrdiff_t>(k) + 1, e.size()));
    turning += std::atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]);
  }
  const double turns = turning / kTwoPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) {
    throw Error(ErrorCode::kInconsistency,
                "tangent turning sum " + std::to_string(turns) + " is not an integer");
  }
  return static_cast<int>(rounded);
}

// ---------------------------------------------------------------------------
// Presets

std::string_view preset_name(const CurvePreset& preset) {
  struct Visitor {
    std::string_view operator()(const CirclePreset&) const { return "circle"; }
    std::string_view operator()(const CircleNonequiPreset&) const { return "circle-nonequi"; }
    std::string_view operator()(const LemniscatePreset&) const { return "lemniscate"; }
    std::string_view operator()(const HypotrochoidPreset&) const { return "hypotrochoid"; }
    std::string_view operator()(const CustomNodalPreset&) const { return "custom"; }
  };
  return std::visit(Visitor{}, preset);
}

CurvePreset preset_from_name(std::string_view name) {
  if (name == "circle") return CirclePreset{};
  if (name == "circle-nonequi") return CircleNonequiPreset{};
  if (name == "lemniscate") return LemniscatePreset{};
  if (name == "hypotrochoid") return HypotrochoidPreset{};
  if (name == "custom") return CustomNodalPreset{};
  throw Error(ErrorCode::kUnknownPreset, "unknown curve preset '" + std::string(name) + "'");
}

namespace {

void require_positive(double value, std::string_view what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " must be positive, got " + std::to_string(value));
  }
}

// Angle of vertex j for the circle-nonequi layout.
double nonequi_angle(std::size_t j, std::size_t n) {
  constexpr double pi = std::numbers::pi;
  const std::size_t dense = n / 2;
  if (j < dense) {
    return pi / 2 + static_cast<double>(j) * (pi / 2) / static_cast<double>(dense);
  }
  return pi + static_cast<double>(j - dense) * (3 * pi / 2) / static_cast<double>(n - dense);
}

}  // namespace

CurveState sample_preset(const CurvePreset& preset, const Grid& grid, int dim) {
  if (dim != 2 && dim != 3) {
    throw Error(ErrorCode::kUnsupportedDimension,
                "curves must live in R^2 or R^3, got dim " + std::to_string(dim));
  }
  const std::size_t n = grid.size();
  const auto nd = static_cast<std::size_t>(dim);
  CurveState x(dim, n);
  auto put = [&](std::size_t j, double a, double b, double c = 0.0) {
    auto p = x[j];
    p[0] = a;
    p[1] = b;
    if (nd == 3) p[2] = c;
  };

  if (const auto* c = std::get_if<CirclePreset>(&preset)) {
    require_positive(c->radius, "circle radius");
    for (std::size_t j = 0; j < n; ++j) {
      const double u = grid.node(j);
      put(j, c->radius * std::cos(u), c->radius * std::sin(u));
    }
  } else if (const auto* c = std::get_if<CircleNonequiPreset>(&preset)) {
    require_positive(c->radius, "circle radius");
    for (std::size_t j = 0; j < n; ++j) {
      const double theta = nonequi_angle(j, n);
      put(j, c->radius * std::cos(theta), c->radius * std::sin(theta));
    }
  } else if (std::holds_alternative<LemniscatePreset>(preset)) {
    for (std::size_t j = 0; j < n; ++j) {
      const double u = grid.node(j);
      const double s = std::sin(u);
      const double r = (std::cos(u) + 4.0) * std::cos(u) / (1.0 + s * s);
      put(j, r, r * s);
    }
  } else if (const auto* h = std::get_if<HypotrochoidPreset>(&preset)) {
    if (h->rolling_radius == 0.0 || !std::isfinite(h->rolling_radius)) {
      throw Error(ErrorCode::kInvalidArgument, "hypotrochoid rolling radius must be nonzero");
    }
    require_positive(h->outer_radius - h->rolling_radius,
                     "hypotrochoid outer minus rolling radius");
    if (!std::isfinite(h->offset)) {
      throw Error(ErrorCode::kInvalidArgument, "hypotrochoid offset must be finite");
    }
    const double ratio = (h->outer_radius - h->rolling_radius) / h->rolling_radius;
    if (std::abs(ratio - std::round(ratio)) > 1e-12) {
      throw Error(ErrorCode::kInvalidArgument,
                  "hypotrochoid (R - r) / r must be an integer for a closed curve");
    }
    if (dim == 2 && h->alpha != 0.0) {
      throw Error(ErrorCode::kUnsupportedDimension,
                  "hypotrochoid with nonzero alpha needs dimension 3");
    }
    const double k = std::round(ratio);
    const double big = h->outer_radius - h->rolling_radius;
    for (std::size_t j = 0; j < n; ++j) {
      const double u = grid.node(j);
      put(j, big * std::cos(u) + h->offset * std::cos(k * u),
          big * std::sin(u) - h->offset * std::sin(k * u), h->alpha * std::sin(3.0 * u));
    }
  } else {
    const auto& custom = std::get<CustomNodalPreset>(preset);
    if (custom.coords.size() != n * nd) {
      throw Error(ErrorCode::kInvalidArgument,
                  "custom vertex list has " + std::to_string(custom.coords.size()) +
                      " values, expected " + std::to_string(n * nd));
    }
    x = CurveState(dim, custom.coords);
  }
  x.t = 0.0;
  return x;
}

}  // namespace elastica
