#pragma once

// Seeded random polygons, curvature fields and rigid motions.

#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "elastica/mesh.hpp"

namespace testing_support {

using Rng = std::mt19937_64;

// Star-shaped polygon around a random center: radius 1 +- 30 %, angles
// jittered within their sector, optional out-of-plane wobble in 3D.
inline elastica::CurveState random_polygon(Rng& rng, std::size_t n, int dim) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  elastica::CurveState x(dim, n);
  const double cx = unit(rng);
  const double cy = unit(rng);
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = elastica::kTwoPi * (static_cast<double>(j) + 0.3 * unit(rng)) /
                         static_cast<double>(n);
    const double r = 1.0 + 0.3 * unit(rng);
    x[j][0] = cx + r * std::cos(theta);
    x[j][1] = cy + r * std::sin(theta);
    if (dim == 3) x[j][2] = 0.4 * unit(rng);
  }
  return x;
}

inline elastica::CurvatureField random_field(Rng& rng, std::size_t n, int dim) {
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  elastica::CurvatureField y(dim, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (double& v : y[j]) v = unit(rng);
  }
  return y;
}

// Grid with widths jittered by up to +-40 % around 2 pi / n.
inline elastica::Grid random_grid(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.6, 1.4);
  std::vector<double> w(n);
  double total = 0.0;
  for (double& v : w) total += (v = unit(rng));
  std::vector<double> nodes(n + 1);
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    nodes[j] = elastica::kTwoPi * acc / total;
    acc += w[j];
  }
  nodes[n] = elastica::kTwoPi;
  return elastica::Grid(std::move(nodes));
}

// Proper rotation (row-major) times a translation.
struct RigidMotion {
  int dim = 2;
  std::vector<double> rotation;
  std::vector<double> shift;

  std::vector<double> rotate(std::span<const double> v) const {
    const auto n = static_cast<std::size_t>(dim);
    std::vector<double> out(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) out[r] += rotation[r * n + c] * v[c];
    }
    return out;
  }

  elastica::CurveState apply(const elastica::CurveState& x) const {
    elastica::CurveState out = x;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const auto r = rotate(x[j]);
      for (std::size_t c = 0; c < r.size(); ++c) out[j][c] = r[c] + shift[c];
    }
    return out;
  }

  elastica::CurvatureField apply_linear(const elastica::CurvatureField& y) const {
    elastica::CurvatureField out = y;
    for (std::size_t j = 0; j < y.size(); ++j) {
      const auto r = rotate(y[j]);
      for (std::size_t c = 0; c < r.size(); ++c) out[j][c] = r[c];
    }
    return out;
  }
};

inline RigidMotion random_motion(Rng& rng, int dim) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> unit(-3.0, 3.0);
  RigidMotion m;
  m.dim = dim;
  if (dim == 2) {
    const double a = angle(rng);
    m.rotation = {std::cos(a), -std::sin(a), std::sin(a), std::cos(a)};
    m.shift = {unit(rng), unit(rng)};
  } else {
    // Unit quaternion to rotation matrix.
    std::normal_distribution<double> gauss;
    double q[4];
    double norm = 0.0;
    for (double& v : q) norm += (v = gauss(rng)) * v;
    norm = std::sqrt(norm);
    for (double& v : q) v /= norm;
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    m.rotation = {1 - 2 * (y * y + z * z), 2 * (x * y - z * w),     2 * (x * z + y * w),
                  2 * (x * y + z * w),     1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
                  2 * (x * z - y * w),     2 * (y * z + x * w),     1 - 2 * (x * x + y * y)};
    m.shift = {unit(rng), unit(rng), unit(rng)};
  }
  return m;
}

}  // namespace testing_support
