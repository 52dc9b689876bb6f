#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace elastica {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

// Square compressed-sparse-row matrix. Column indices are sorted within each
// row and unique; explicit zeros are kept so that the pattern depends only on
// the assembly loop, not on the data.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  // Duplicates are summed in a fixed order, so equal inputs give equal bits.
  static SparseMatrix from_triplets(std::size_t dim, std::vector<Triplet> triplets);
  static SparseMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t nonzeros() const { return values_.size(); }
  std::span<const std::size_t> row_offsets() const { return row_offsets_; }
  std::span<const std::size_t> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }

  // Entry (i, j), zero if not stored.
  double at(std::size_t i, std::size_t j) const;
  std::vector<double> multiply(std::span<const double> z) const;
  double norm_inf() const;
  // Row-major dense copy.
  std::vector<double> to_dense() const;
  bool same_pattern(const SparseMatrix& other) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

}  // namespace elastica
