#include "elastica/scheme.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "elastica/error.hpp"

namespace elastica {

// ---------------------------------------------------------------------------
// Monitor

Monitor Monitor::constant(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidMonitor,
                "constant monitor must be positive, got " + std::to_string(value));
  }
  std::ostringstream name;
  name.imbue(std::locale::classic());
  name << "constant:" << value;
  return Monitor(Kind::kConstant, value, nullptr, name.str());
}

Monitor Monitor::lemniscate_quadratic() {
  return Monitor(Kind::kLemniscateQuadratic, 0.0, nullptr, "lemniscate-quadratic");
}

Monitor Monitor::tabulated(Function f, std::string description) {
  if (!f) throw Error(ErrorCode::kInvalidMonitor, "tabulated monitor needs a function");
  return Monitor(Kind::kTabulated, 0.0, std::move(f), std::move(description));
}

double Monitor::operator()(std::span<const double> xi) const {
  double m = 0.0;
  switch (kind_) {
    case Kind::kConstant:
      m = value_;
      break;
    case Kind::kLemniscateQuadratic:
      m = 1.0 + (xi[0] - 1.0) * (xi[0] - 1.0) / 10.0;
      break;
    case Kind::kTabulated:
      m = f_(xi);
      break;
  }
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw Error(ErrorCode::kInvalidMonitor,
                "monitor '" + description_ + "' returned non-positive value " +
                    std::to_string(m));
  }
  return m;
}

// ---------------------------------------------------------------------------

void validate(const SchemeParams& p) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(what) + " must be positive, got " + std::to_string(v));
    }
  };
  positive(p.delta, "time step delta");
  if (const auto* d = std::get_if<DirichletParams>(&p.variant)) {
    positive(d->lambda, "lambda");
  } else {
    const auto& e = std::get<ExtendedParams>(p.variant);
    positive(e.lambda_tilde, "lambda_tilde");
    positive(e.epsilon, "epsilon");
  }
}

namespace {

void check_inputs(const CurveState& x, const CurvatureField& y, const Grid& grid) {
  check_nondegenerate(x);
  if (grid.size() != x.size()) {
    throw Error(ErrorCode::kGridMismatch, "grid has " + std::to_string(grid.size()) +
                                              " elements but the curve has " +
                                              std::to_string(x.size()) + " vertices");
  }
  if (y.size() != x.size() || y.dim() != x.dim()) {
    throw Error(ErrorCode::kGridMismatch,
                "curvature field does not match the curve's size or dimension");
  }
  if (!y.all_finite()) {
    throw Error(ErrorCode::kNonFinite, "curvature field has non-finite entries");
  }
}

// Collects element contributions for the coupled (x, y) system.
class SystemBuilder {
 public:
  SystemBuilder(std::size_t vertices, int dim) {
    sys_.vertices = vertices;
    sys_.dim = dim;
    n_ = static_cast<std::size_t>(dim);
    sys_.rhs.assign(sys_.size(), 0.0);
    // Per element at most 4 node pairs x (x-x, x-y, y-x blocks) plus diagonals.
    triplets_.reserve(vertices * 4 * (3 * n_ * n_ + n_));
  }

  // value * I into block (row vertex, col vertex).
  void scaled_identity(std::size_t row, std::size_t col, double value) {
    for (std::size_t c = 0; c < n_; ++c) triplets_.push_back({row + c, col + c, value});
  }

  // value * B, B row-major n x n.
  void scaled_block(std::size_t row, std::size_t col, std::span<const double> b, double value) {
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) {
        triplets_.push_back({row + r, col + c, value * b[r * n_ + c]});
      }
    }
  }

  void add_rhs(std::size_t row, std::span<const double> v, double value) {
    for (std::size_t c = 0; c < n_; ++c) sys_.rhs[row + c] += value * v[c];
  }

  std::size_t x_row(std::size_t j) const { return sys_.x_index(j, 0); }
  std::size_t y_row(std::size_t j) const { return sys_.y_index(j, 0); }

  LinearSystem finish() && {
    sys_.matrix = SparseMatrix::from_triplets(sys_.size(), std::move(triplets_));
    return std::move(sys_);
  }

 private:
  LinearSystem sys_;
  std::size_t n_ = 0;
  std::vector<Triplet> triplets_;
};

// d(phi_a)/du and d(phi_b)/du on an element are -1/h and +1/h.
constexpr std::array<double, 2> kSlope = {-1.0, 1.0};

// Contributions shared by both variants: curvature stiffness, |y|^2
// transport and the whole curvature equation.
void add_common_terms(SystemBuilder& b, const EdgeData& e, std::size_t k,
                      std::array<std::size_t, 2> node, const TermSet& terms) {
  const double q = e.length(k);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t l = 0; l < 2; ++l) {
      const double ss = kSlope[i] * kSlope[l];
      if (terms.curvature_stiffness) {
        b.scaled_block(b.x_row(node[i]), b.y_row(node[l]), e.projector(k), -ss / q);
      }
      if (terms.transport) {
        b.scaled_identity(b.x_row(node[i]), b.x_row(node[l]), -ss * e.weight(k));
      }
      if (terms.curvature_coupling) {
        b.scaled_identity(b.y_row(node[i]), b.x_row(node[l]), ss / q);
      }
    }
    if (terms.curvature_mass) {
      b.scaled_identity(b.y_row(node[i]), b.y_row(node[i]), 0.5 * q);
    }
  }
}

}  // namespace

CurvatureField init_curvature(const CurveState& x0, const Grid& grid) {
  check_nondegenerate(x0);
  if (grid.size() != x0.size()) {
    throw Error(ErrorCode::kGridMismatch, "grid and curve sizes differ");
  }
  const EdgeData e = edge_data(x0);
  const std::size_t n_vert = x0.size();
  CurvatureField y(x0.dim(), n_vert);
  for (std::size_t j = 0; j < n_vert; ++j) {
    const std::size_t left = wrap(static_cast<std::ptrdiff_t>(j) - 1, n_vert);
    const double mass = e.length(left) + e.length(j);
    const auto tl = e.tangent(left);
    const auto tr = e.tangent(j);
    auto out = y[j];
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = 2.0 * (tr[c] - tl[c]) / mass;
  }
  return y;
}

LinearSystem assemble_step(const CurveState& x, const CurvatureField& y,
                           const SchemeParams& p, const Grid& grid, const TermSet& terms) {
  const auto* params = std::get_if<DirichletParams>(&p.variant);
  if (params == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "assemble_step needs the Dirichlet variant");
  }
  validate(p);
  check_inputs(x, y, grid);

  const EdgeData e = edge_data(x, y);
  const std::size_t n_vert = x.size();
  SystemBuilder b(n_vert, x.dim());
  for (std::size_t k = 0; k < n_vert; ++k) {
    const std::array<std::size_t, 2> node = {k, wrap(static_cast<std::ptrdiff_t>(k) + 1, n_vert)};
    const double q = e.length(k);
    const double h = grid.width(k);
    if (terms.velocity) {
      // Lumped: each endpoint receives half of the element's length element.
      const double m = 0.5 * q / p.delta;
      for (std::size_t i = 0; i < 2; ++i) {
        b.scaled_identity(b.x_row(node[i]), b.x_row(node[i]), m);
        b.add_rhs(b.x_row(node[i]), x[node[i]], m);
      }
    }
    if (terms.penalty) {
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t l = 0; l < 2; ++l) {
          b.scaled_identity(b.x_row(node[i]), b.x_row(node[l]),
                            kSlope[i] * kSlope[l] * params->lambda / h);
        }
      }
    }
    add_common_terms(b, e, k, node, terms);
  }
  return std::move(b).finish();
}

LinearSystem assemble_step_extended(const CurveState& x, const CurvatureField& y,
                                    const SchemeParams& p, const Grid& grid,
                                    const TermSet& terms) {
  const auto* params = std::get_if<ExtendedParams>(&p.variant);
  if (params == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "assemble_step_extended needs the Extended variant");
  }
  validate(p);
  check_inputs(x, y, grid);

  const EdgeData e = edge_data(x, y);
  const std::size_t n_vert = x.size();
  const auto n = static_cast<std::size_t>(x.dim());

  std::vector<double> monitor(n_vert);
  for (std::size_t j = 0; j < n_vert; ++j) monitor[j] = params->monitor(x[j]);

  SystemBuilder b(n_vert, x.dim());
  std::vector<double> weighted(n * n);
  for (std::size_t k = 0; k < n_vert; ++k) {
    const std::array<std::size_t, 2> node = {k, wrap(static_cast<std::ptrdiff_t>(k) + 1, n_vert)};
    const double q = e.length(k);
    const double h = grid.width(k);

    if (terms.velocity) {
      // A = P + eps tau tau^T = I - (1 - eps) tau tau^T, consistent P1 mass
      // (q/6) [2 1; 1 2] on the element.
      const auto tau = e.tangent(k);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          weighted[r * n + c] = e.projector(k)[r * n + c] + params->epsilon * tau[r] * tau[c];
        }
      }
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t l = 0; l < 2; ++l) {
          const double m = (i == l ? 2.0 : 1.0) * q / (6.0 * p.delta);
          b.scaled_block(b.x_row(node[i]), b.x_row(node[l]), weighted, m);
          const auto xl = x[node[l]];
          std::array<double, 3> ax{};
          for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) ax[r] += weighted[r * n + c] * xl[c];
          }
          b.add_rhs(b.x_row(node[i]), std::span<const double>(ax.data(), n), m);
        }
      }
    }
    const double monitor_coeff = params->epsilon * 0.5 * (monitor[node[0]] + monitor[node[1]]) / h;
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t l = 0; l < 2; ++l) {
        const double ss = kSlope[i] * kSlope[l];
        if (terms.penalty) {
          b.scaled_identity(b.x_row(node[i]), b.x_row(node[l]), ss * params->lambda_tilde / q);
        }
        if (terms.monitor) {
          b.scaled_identity(b.x_row(node[i]), b.x_row(node[l]), ss * monitor_coeff);
        }
      }
    }
    add_common_terms(b, e, k, node, terms);
  }
  return std::move(b).finish();
}

LinearSystem assemble(const CurveState& x, const CurvatureField& y, const SchemeParams& p,
                      const Grid& grid) {
  return p.is_extended() ? assemble_step_extended(x, y, p, grid)
                         : assemble_step(x, y, p, grid);
}

double monitor_dirichlet(const CurveState& x, const Grid& grid, const Monitor& monitor) {
  check_nondegenerate(x);
  if (grid.size() != x.size()) {
    throw Error(ErrorCode::kGridMismatch, "grid and curve sizes differ");
  }
  const EdgeData e = edge_data(x);
  const std::size_t n_vert = x.size();
  double sum = 0.0;
  double m_prev = monitor(x[0]);
  const double m_first = m_prev;
  for (std::size_t k = 0; k < n_vert; ++k) {
    const double m_next = k + 1 < n_vert ? monitor(x[k + 1]) : m_first;
    const double q = e.length(k);
    sum += 0.5 * (m_prev + m_next) * q * q / grid.width(k);
    m_prev = m_next;
  }
  return 0.5 * sum;
}

}  // namespace elastica
