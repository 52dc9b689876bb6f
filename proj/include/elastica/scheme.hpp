#pragma once

// Per-step linear systems of the semi-implicit parametric finite element
// schemes.
//
// Dirichlet variant: L2 gradient flow of bending energy + lambda * Dirichlet
// energy, lumped velocity mass.
// Extended variant: bending energy + lambda_tilde * length + epsilon-weighted
// tangential velocity and monitor-weighted Dirichlet term, consistent
// velocity mass.
//
// Unknowns are ordered [x_0 .. x_{N-1}, y_0 .. y_{N-1}], each vertex
// contributing `dim` consecutive components. Rows follow the same layout:
// the first N*dim rows are the position equations, the rest the curvature
// equations. Geometric coefficients are frozen at the old time level.

#include <functional>
#include <span>
#include <string>
#include <variant>

#include "elastica/mesh.hpp"
#include "elastica/sparse.hpp"

namespace elastica {

class Monitor {
 public:
  enum class Kind { kConstant, kLemniscateQuadratic, kTabulated };
  using Function = std::function<double(std::span<const double>)>;

  // Throws kInvalidMonitor unless value > 0.
  static Monitor constant(double value);
  // M(xi) = 1 + (xi_1 - 1)^2 / 10; further coordinates are ignored.
  static Monitor lemniscate_quadratic();
  // Arbitrary user-supplied positive weight on the ambient space.
  static Monitor tabulated(Function f, std::string description);

  Kind kind() const { return kind_; }
  // Constant value for kConstant, otherwise 0.
  double constant_value() const { return value_; }
  // "constant:<c>", "lemniscate-quadratic" or the tabulated description.
  const std::string& description() const { return description_; }

  // Throws kInvalidMonitor for a non-positive or non-finite result.
  double operator()(std::span<const double> xi) const;

 private:
  Monitor(Kind kind, double value, Function f, std::string description)
      : kind_(kind), value_(value), f_(std::move(f)), description_(std::move(description)) {}

  Kind kind_;
  double value_;
  Function f_;
  std::string description_;
};

struct DirichletParams {
  double lambda = 0.5;
};

struct ExtendedParams {
  double lambda_tilde = 0.5;
  double epsilon = 1e-2;
  Monitor monitor = Monitor::constant(1.0);
};

struct SchemeParams {
  std::variant<DirichletParams, ExtendedParams> variant;
  double delta = 1e-3;

  bool is_extended() const { return std::holds_alternative<ExtendedParams>(variant); }
};

// Throws kInvalidArgument unless delta and every weight are positive.
void validate(const SchemeParams& p);

// Individual weak-form contributions, for inspection and testing. Penalty is
// the lambda Dirichlet term (Dirichlet variant) or the lambda_tilde length
// term (Extended variant).
struct TermSet {
  bool velocity = true;
  bool curvature_stiffness = true;
  bool transport = true;
  bool penalty = true;
  bool monitor = true;
  bool curvature_mass = true;
  bool curvature_coupling = true;

  static TermSet none() { return {false, false, false, false, false, false, false}; }
};

struct LinearSystem {
  std::size_t vertices = 0;
  int dim = 0;
  SparseMatrix matrix;
  std::vector<double> rhs;

  std::size_t size() const { return 2 * vertices * static_cast<std::size_t>(dim); }
  std::size_t x_index(std::size_t j, std::size_t c) const {
    return j * static_cast<std::size_t>(dim) + c;
  }
  std::size_t y_index(std::size_t j, std::size_t c) const {
    return (vertices + j) * static_cast<std::size_t>(dim) + c;
  }
};

// y_j = 2 (tau_j - tau_{j-1}) / (q_{j-1} + q_j): the lumped discrete
// curvature of the initial polygon.
CurvatureField init_curvature(const CurveState& x0, const Grid& grid);

LinearSystem assemble_step(const CurveState& x, const CurvatureField& y,
                           const SchemeParams& p, const Grid& grid,
                           const TermSet& terms = {});

LinearSystem assemble_step_extended(const CurveState& x, const CurvatureField& y,
                                    const SchemeParams& p, const Grid& grid,
                                    const TermSet& terms = {});

// Dispatches on p.variant.
LinearSystem assemble(const CurveState& x, const CurvatureField& y,
                      const SchemeParams& p, const Grid& grid);

// 1/2 int I_h(M(x)) |x_u|^2 du.
double monitor_dirichlet(const CurveState& x, const Grid& grid, const Monitor& monitor);

}  // namespace elastica
