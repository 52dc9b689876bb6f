#include "elastica/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "elastica/error.hpp"

namespace elastica {

SparseMatrix SparseMatrix::from_triplets(std::size_t dim, std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row >= dim || t.col >= dim) {
      throw Error(ErrorCode::kInvalidArgument, "triplet index outside the matrix");
    }
  }
  // Stable bucket pass by row, then a stable sort by column inside each row,
  // so duplicates are always summed in insertion order.
  std::vector<std::size_t> start(dim + 1, 0);
  for (const auto& t : triplets) ++start[t.row + 1];
  for (std::size_t r = 0; r < dim; ++r) start[r + 1] += start[r];
  std::vector<std::pair<std::size_t, double>> bucketed(triplets.size());
  {
    std::vector<std::size_t> next(start.begin(), start.end() - 1);
    for (const auto& t : triplets) bucketed[next[t.row]++] = {t.col, t.value};
  }

  SparseMatrix m;
  m.dim_ = dim;
  m.row_offsets_.assign(dim + 1, 0);
  m.col_indices_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  for (std::size_t r = 0; r < dim; ++r) {
    const auto first = bucketed.begin() + static_cast<std::ptrdiff_t>(start[r]);
    const auto last = bucketed.begin() + static_cast<std::ptrdiff_t>(start[r + 1]);
    std::stable_sort(first, last, [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = first; it != last;) {
      const std::size_t col = it->first;
      double sum = 0.0;
      for (; it != last && it->first == col; ++it) sum += it->second;
      m.col_indices_.push_back(col);
      m.values_.push_back(sum);
    }
    m.row_offsets_[r + 1] = m.col_indices_.size();
  }
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t dim) {
  std::vector<Triplet> t;
  t.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) t.push_back({i, i, 1.0});
  return from_triplets(dim, std::move(t));
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i]);
  const auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

std::vector<double> SparseMatrix::multiply(std::span<const double> z) const {
  if (z.size() != dim_) {
    throw Error(ErrorCode::kInvalidArgument, "vector length does not match matrix");
  }
  std::vector<double> out(dim_, 0.0);
  for (std::size_t r = 0; r < dim_; ++r) {
    double s = 0.0;
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
      s += values_[p] * z[col_indices_[p]];
    }
    out[r] = s;
  }
  return out;
}

double SparseMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    double s = 0.0;
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
      s += std::abs(values_[p]);
    }
    best = std::max(best, s);
  }
  return best;
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> dense(dim_ * dim_, 0.0);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
      dense[r * dim_ + col_indices_[p]] = values_[p];
    }
  }
  return dense;
}

bool SparseMatrix::same_pattern(const SparseMatrix& other) const {
  return dim_ == other.dim_ && row_offsets_ == other.row_offsets_ &&
         col_indices_ == other.col_indices_;
}

}  // namespace elastica
