#include "elastica/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "elastica/error.hpp"

namespace elastica {

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

Adjacency symmetric_adjacency(const SparseMatrix& a) {
  Adjacency adj(a.dim());
  const auto rows = a.row_offsets();
  const auto cols = a.col_indices();
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t p = rows[r]; p < rows[r + 1]; ++p) {
      if (cols[p] == r) continue;
      adj[r].push_back(cols[p]);
      adj[cols[p]].push_back(r);
    }
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

// Breadth-first level structure rooted at `root`, restricted to unvisited
// nodes. Returns nodes in visiting order and fills `level`.
std::vector<std::size_t> level_order(const Adjacency& adj, std::size_t root,
                                     const std::vector<char>& visited,
                                     std::vector<std::size_t>& level) {
  std::vector<std::size_t> order{root};
  level.assign(adj.size(), std::numeric_limits<std::size_t>::max());
  level[root] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::size_t v = order[head];
    for (std::size_t w : adj[v]) {
      if (!visited[w] && level[w] == std::numeric_limits<std::size_t>::max()) {
        level[w] = level[v] + 1;
        order.push_back(w);
      }
    }
  }
  return order;
}

// George-Liu pseudo-peripheral node search within one component.
std::size_t pseudo_peripheral(const Adjacency& adj, std::size_t start,
                              const std::vector<char>& visited) {
  std::vector<std::size_t> level;
  std::size_t root = start;
  std::size_t eccentricity = 0;
  for (;;) {
    const auto order = level_order(adj, root, visited, level);
    const std::size_t depth = level[order.back()];
    if (depth <= eccentricity && root != start) return root;
    eccentricity = depth;
    std::size_t best = order.back();
    for (std::size_t v : order) {
      if (level[v] == depth && adj[v].size() < adj[best].size()) best = v;
    }
    if (best == root) return root;
    root = best;
  }
}

}  // namespace

std::vector<std::size_t> reverse_cuthill_mckee(const SparseMatrix& a) {
  const Adjacency adj = symmetric_adjacency(a);
  const std::size_t n = a.dim();
  std::vector<char> visited(n, 0);
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<std::size_t> neighbours;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (visited[seed]) continue;
    const std::size_t root = pseudo_peripheral(adj, seed, visited);
    const std::size_t begin = order.size();
    order.push_back(root);
    visited[root] = 1;
    for (std::size_t head = begin; head < order.size(); ++head) {
      neighbours.clear();
      for (std::size_t w : adj[order[head]]) {
        if (!visited[w]) neighbours.push_back(w);
      }
      std::sort(neighbours.begin(), neighbours.end(), [&](std::size_t u, std::size_t v) {
        return adj[u].size() != adj[v].size() ? adj[u].size() < adj[v].size() : u < v;
      });
      for (std::size_t w : neighbours) {
        visited[w] = 1;
        order.push_back(w);
      }
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

// ---------------------------------------------------------------------------

Factorization SparseLu::factorize(const SparseMatrix& a) {
  const std::size_t n = a.dim();
  if (!pattern_ || !pattern_->same_pattern(a)) {
    order_ = reverse_cuthill_mckee(a);
    pattern_ = a;
  }
  for (double v : a.values()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "matrix has non-finite entries");
  }

  Factorization f;
  f.order_ = order_;
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order_[i]] = i;

  const auto rows = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  std::size_t kl = 0;
  std::size_t ku = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t p = rows[r]; p < rows[r + 1]; ++p) {
      const std::size_t i = position[r];
      const std::size_t j = position[cols[p]];
      if (i > j) kl = std::max(kl, i - j);
      if (j > i) ku = std::max(ku, j - i);
    }
  }
  f.stats_ = {n, kl, ku, 0};
  f.width_ = 2 * kl + ku + 1;
  f.band_.assign(n * f.width_, 0.0);
  f.stats_.stored_entries = f.band_.size();
  f.pivots_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t p = rows[r]; p < rows[r + 1]; ++p) {
      f.at(position[r], position[cols[p]]) += vals[p];
    }
  }

  const double tiny = static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                      a.norm_inf();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t last_row = std::min(k + kl, n - 1);
    const std::size_t last_col = std::min(k + kl + ku, n - 1);
    std::size_t p = k;
    double best = std::abs(f.at(k, k));
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      const double v = std::abs(f.at(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best > tiny)) {
      throw Error(ErrorCode::kSolverFailure,
                  "zero pivot in column " + std::to_string(order_[k]) +
                      " (matrix singular or numerically rank deficient)",
                  order_[k]);
    }
    f.pivots_[k] = p;
    // row(i)[j] addresses entry (i, j) for j in the band of row i.
    auto row = [&](std::size_t i) { return f.band_.data() + i * f.width_ + kl - i; };
    double* pivot_row = row(k);
    if (p != k) {
      double* other = row(p);
      for (std::size_t j = k; j <= last_col; ++j) std::swap(pivot_row[j], other[j]);
    }
    const double pivot = pivot_row[k];
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      double* target = row(i);
      if (target[k] == 0.0) continue;
      const double lik = target[k] / pivot;
      target[k] = lik;
      for (std::size_t j = k + 1; j <= last_col; ++j) target[j] -= lik * pivot_row[j];
    }
  }
  return f;
}

std::vector<double> Factorization::solve(std::span<const double> rhs) const {
  const std::size_t n = stats_.dim;
  if (rhs.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "right-hand side length does not match matrix");
  }
  const std::size_t kl = stats_.lower_bandwidth;
  const std::size_t ku = stats_.upper_bandwidth;
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = rhs[order_[i]];
  for (std::size_t k = 0; k < n; ++k) {
    std::swap(c[k], c[pivots_[k]]);
    const std::size_t last_row = std::min(k + kl, n - 1);
    for (std::size_t i = k + 1; i <= last_row; ++i) c[i] -= at(i, k) * c[k];
  }
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t last_col = std::min(i + kl + ku, n - 1);
    double s = c[i];
    for (std::size_t j = i + 1; j <= last_col; ++j) s -= at(i, j) * c[j];
    c[i] = s / at(i, i);
  }
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[order_[i]] = c[i];
  return z;
}

double relative_residual(const SparseMatrix& a, std::span<const double> z,
                         std::span<const double> b) {
  const auto az = a.multiply(z);
  double r = 0.0;
  double zn = 0.0;
  double bn = 0.0;
  for (std::size_t i = 0; i < az.size(); ++i) {
    r = std::max(r, std::abs(az[i] - b[i]));
    zn = std::max(zn, std::abs(z[i]));
    bn = std::max(bn, std::abs(b[i]));
  }
  const double scale = a.norm_inf() * zn + bn;
  return scale > 0.0 ? r / scale : r;
}

std::vector<double> SparseLu::solve(const SparseMatrix& a, std::span<const double> rhs) {
  for (double v : rhs) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "right-hand side is not finite");
  }
  const Factorization f = factorize(a);
  auto z = f.solve(rhs);

  // One refinement step with the residual accumulated in extended precision.
  const auto rows = a.row_offsets();
  const auto cols = a.col_indices();
  const auto vals = a.values();
  std::vector<double> r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    long double s = rhs[i];
    for (std::size_t p = rows[i]; p < rows[i + 1]; ++p) {
      s -= static_cast<long double>(vals[p]) * z[cols[p]];
    }
    r[i] = static_cast<double>(s);
  }
  const auto dz = f.solve(r);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += dz[i];

  const double res = relative_residual(a, z, rhs);
  if (!(res <= kResidualTolerance)) {
    throw Error(ErrorCode::kAccuracy,
                "relative residual " + std::to_string(res) + " exceeds tolerance");
  }
  return z;
}

std::vector<double> solve(const SparseMatrix& a, std::span<const double> rhs) {
  SparseLu solver;
  return solver.solve(a, rhs);
}

StepSolution solve(const LinearSystem& sys, SparseLu& solver) {
  if (sys.matrix.dim() != sys.size() || sys.rhs.size() != sys.size()) {
    throw Error(ErrorCode::kInvalidArgument, "linear system dimensions are inconsistent");
  }
  const auto z = solver.solve(sys.matrix, sys.rhs);
  const std::size_t half = sys.size() / 2;
  StepSolution out{CurveState(sys.dim, std::vector<double>(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(half))),
                   CurvatureField(sys.dim, std::vector<double>(z.begin() + static_cast<std::ptrdiff_t>(half), z.end()))};
  return out;
}

StepSolution solve(const LinearSystem& sys) {
  SparseLu solver;
  return solve(sys, solver);
}

}  // namespace elastica
