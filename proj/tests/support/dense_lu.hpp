#pragma once

// Textbook Gaussian elimination with partial pivoting on a dense row-major
// copy of the matrix, carried out in long double.

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

// Returns nullopt if a pivot is exactly zero.
inline std::optional<std::vector<double>> dense_solve(const std::vector<double>& matrix,
                                                      std::size_t n,
                                                      const std::vector<double>& rhs) {
  using Real = long double;
  std::vector<Real> a(matrix.begin(), matrix.end());
  std::vector<Real> b(rhs.begin(), rhs.end());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i * n + k]) > std::abs(a[p * n + k])) p = i;
    }
    if (a[p * n + k] == 0.0) return std::nullopt;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Real f = a[i * n + k] / a[k * n + k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }
  std::vector<Real> z(n);
  for (std::size_t i = n; i-- > 0;) {
    Real s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * z[j];
    z[i] = s / a[i * n + i];
  }
  return std::vector<double>(z.begin(), z.end());
}

// max_i |a_i - b_i| / max(max_i |b_i|, tiny)
inline double relative_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace oracle
