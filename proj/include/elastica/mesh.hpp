#pragma once

// Parameter grid, nodal curve data, per-edge geometry and scalar diagnostics.
//
// Index conventions: vertices j = 0..N-1 sit at parameters u_j. Edge k joins
// vertex k to vertex k+1 (mod N) and covers the parameter interval
// [u_k, u_{k+1}] of width h_k. Vertex j therefore lies between edge j-1 and
// edge j. All indices wrap cyclically.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace elastica {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline std::size_t wrap(std::ptrdiff_t j, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((j % m) + m) % m);
}

// Periodic partition 0 = u_0 < u_1 < ... < u_N = 2*pi.
class Grid {
 public:
  // Nodes u_0..u_N inclusive. Throws kInvalidGrid unless N >= 3, u_0 = 0,
  // the widths are positive and sum to 2*pi.
  explicit Grid(std::vector<double> nodes);

  std::size_t size() const { return nodes_.size() - 1; }
  double node(std::size_t j) const { return nodes_[j]; }
  // h_k = u_{k+1} - u_k, k taken mod N.
  double width(std::size_t k) const { return widths_[k % widths_.size()]; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> widths() const { return widths_; }
  bool is_uniform() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> widths_;
};

Grid uniform_grid(std::size_t n);

// N vectors in R^dim stored vertex-major.
class NodalVectors {
 public:
  NodalVectors() = default;
  NodalVectors(int dim, std::size_t count);
  NodalVectors(int dim, std::vector<double> values);

  int dim() const { return dim_; }
  std::size_t size() const {
    return dim_ == 0 ? 0 : values_.size() / static_cast<std::size_t>(dim_);
  }

  std::span<const double> operator[](std::size_t j) const {
    return {values_.data() + j * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  std::span<double> operator[](std::size_t j) {
    return {values_.data() + j * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  bool all_finite() const;

  friend bool operator==(const NodalVectors&, const NodalVectors&) = default;

 private:
  int dim_ = 0;
  std::vector<double> values_;
};

// Vertex positions x_j of the polygonal curve at time t.
struct CurveState : NodalVectors {
  using NodalVectors::NodalVectors;
  double t = 0.0;

  friend bool operator==(const CurveState&, const CurveState&) = default;
};

// Nodal discrete curvature vectors y_j.
struct CurvatureField : NodalVectors {
  using NodalVectors::NodalVectors;

  friend bool operator==(const CurvatureField&, const CurvatureField&) = default;
};

// Per-edge lengths q_k, unit tangents tau_k, normal projectors
// P_k = I - tau_k tau_k^T (row-major) and curvature weights
// d_k = (|y_k|^2 + |y_{k+1}|^2) / (4 q_k).
class EdgeData {
 public:
  EdgeData(int dim, std::vector<double> lengths, std::vector<double> tangents,
           std::vector<double> projectors, std::vector<double> weights);

  int dim() const { return dim_; }
  std::size_t size() const { return lengths_.size(); }

  double length(std::size_t k) const { return lengths_[k]; }
  std::span<const double> tangent(std::size_t k) const {
    const auto n = static_cast<std::size_t>(dim_);
    return {tangents_.data() + k * n, n};
  }
  std::span<const double> projector(std::size_t k) const {
    const auto n = static_cast<std::size_t>(dim_);
    return {projectors_.data() + k * n * n, n * n};
  }
  double weight(std::size_t k) const { return weights_[k]; }

  std::span<const double> lengths() const { return lengths_; }
  double total_length() const;

 private:
  int dim_;
  std::vector<double> lengths_;
  std::vector<double> tangents_;
  std::vector<double> projectors_;
  std::vector<double> weights_;
};

// Relative edge-length floor: an edge shorter than this fraction of the
// polygon length is treated as collapsed.
inline constexpr double kDegenerateEdgeFraction = 1e-12;

EdgeData edge_data(const CurveState& x, const CurvatureField& y_prev);
// Same, with all curvature weights zero.
EdgeData edge_data(const CurveState& x);

// Throws kDegenerateMesh (index = edge) if some edge is below the floor and
// kNonFinite for NaN/Inf coordinates.
void check_nondegenerate(const CurveState& x);

double polygon_length(const CurveState& x);

// 1/2 sum_k q_k (|y_k|^2 + |y_{k+1}|^2) / 2, the lumped bending energy.
double bending_energy(const CurveState& x, const CurvatureField& y);
// 1/2 sum_k q_k^2 / h_k, the Dirichlet energy of the piecewise linear curve.
double dirichlet_energy(const CurveState& x, const Grid& grid);
// bending_energy + lambda * dirichlet_energy.
double discrete_energy(const CurveState& x, const CurvatureField& y,
                       double lambda, const Grid& grid);

// max_k q_k / min_k q_k.
double mesh_ratio(const EdgeData& e);

// Total signed turning of a planar polygon over 2*pi. Throws
// kUnsupportedDimension for dim != 2 and kInconsistency if the turning sum
// is not within 1e-6 of an integer.
int rotation_index(const CurveState& x);

struct Diagnostics {
  double energy = 0.0;
  double length = 0.0;
  double sigma = 1.0;
  std::optional<double> err;
  std::optional<int> rotation_index;
  // 1/2 int I_h(M) |x_u|^2 for runs with a monitor function.
  std::optional<double> monitor_dirichlet;
};

// ---------------------------------------------------------------------------
// Curve presets

struct CirclePreset {
  double radius = 1.5;
};

// Half of the vertices equally spaced on the quarter arc [pi/2, pi], the rest
// equally spaced on the remaining three quarters.
struct CircleNonequiPreset {
  double radius = 1.5;
};

// ((cos u + 4) cos u / (1 + sin^2 u)) * (1, sin u)
struct LemniscatePreset {};

// ((R-r) cos u + d cos(k u), (R-r) sin u - d sin(k u), alpha sin 3u) with
// k = (R-r)/r, which must be a nonzero integer for the curve to close. A
// negative rolling radius gives the epitrochoid, where both terms turn the
// same way, and a negative offset puts the pen on the far side of the rolling
// circle. The defaults trace 2.5 e^{iu} - 4 e^{5iu}, a curve of rotation
// index 5.
struct HypotrochoidPreset {
  double outer_radius = 2.0;
  double rolling_radius = -0.5;
  double offset = -4.0;
  double alpha = 0.0;
};

// Explicit vertex list, dim values per vertex.
struct CustomNodalPreset {
  std::vector<double> coords;
};

using CurvePreset = std::variant<CirclePreset, CircleNonequiPreset,
                                 LemniscatePreset, HypotrochoidPreset,
                                 CustomNodalPreset>;

std::string_view preset_name(const CurvePreset& preset);
// Default-parameter preset for a name; throws kUnknownPreset.
CurvePreset preset_from_name(std::string_view name);

// Nodal interpolation x_j = x_0(u_j). Throws kInvalidArgument for parameters
// outside their admissible range and kUnsupportedDimension for dim not in
// {2, 3} (or a nonzero hypotrochoid alpha in 2D).
CurveState sample_preset(const CurvePreset& preset, const Grid& grid, int dim);

}  // namespace elastica
