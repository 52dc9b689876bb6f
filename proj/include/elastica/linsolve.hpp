#pragma once

// Sparse direct LU for the cyclic-banded step systems.
//
// The matrix is symmetrically permuted with reverse Cuthill-McKee on the
// pattern of A + A^T, which folds the periodic corner couplings into a
// narrow band, and then factored with banded Gaussian elimination and
// partial (row) pivoting.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "elastica/mesh.hpp"
#include "elastica/scheme.hpp"
#include "elastica/sparse.hpp"

namespace elastica {

// Symmetric reverse Cuthill-McKee permutation: order[new] = old.
std::vector<std::size_t> reverse_cuthill_mckee(const SparseMatrix& a);

struct FillStats {
  std::size_t dim = 0;
  std::size_t lower_bandwidth = 0;
  std::size_t upper_bandwidth = 0;
  // Entries held by the band factor, including pivoting fill room.
  std::size_t stored_entries = 0;
};

class Factorization {
 public:
  std::size_t dim() const { return stats_.dim; }
  const FillStats& stats() const { return stats_; }
  std::vector<double> solve(std::span<const double> rhs) const;

 private:
  friend class SparseLu;
  std::vector<std::size_t> order_;  // order_[new] = old
  std::vector<std::size_t> pivots_;
  std::vector<double> band_;
  std::size_t width_ = 0;
  FillStats stats_;

  double& at(std::size_t i, std::size_t j) {
    return band_[i * width_ + (j + stats_.lower_bandwidth - i)];
  }
  double at(std::size_t i, std::size_t j) const {
    return band_[i * width_ + (j + stats_.lower_bandwidth - i)];
  }
};

// Residual gate: ||A z - b||_inf / (||A||_inf ||z||_inf + ||b||_inf).
inline constexpr double kResidualTolerance = 1e-10;

// Reuses the symbolic ordering while successive matrices share a pattern.
class SparseLu {
 public:
  // Throws kSolverFailure (index = original column of the failed pivot) for
  // a singular or numerically rank-deficient matrix.
  Factorization factorize(const SparseMatrix& a);

  // Factor, solve, apply one step of iterative refinement and check the
  // residual; throws kAccuracy if the residual gate fails and kNonFinite for
  // non-finite input.
  std::vector<double> solve(const SparseMatrix& a, std::span<const double> rhs);

 private:
  std::optional<SparseMatrix> pattern_;
  std::vector<std::size_t> order_;
};

double relative_residual(const SparseMatrix& a, std::span<const double> z,
                         std::span<const double> b);

std::vector<double> solve(const SparseMatrix& a, std::span<const double> rhs);

struct StepSolution {
  CurveState x;
  CurvatureField y;
};

// Solves an assembled step and splits the unknowns back into positions and
// curvature vectors (t left at 0).
StepSolution solve(const LinearSystem& sys);
StepSolution solve(const LinearSystem& sys, SparseLu& solver);

}  // namespace elastica
