#pragma once

#include <optional>

#include "fk/coefficient.hpp"
#include "fk/domain.hpp"
#include "fk/shapes.hpp"

namespace fk {

class PhaseField;

// Discrete operator  u -> -Lap_h u + b u  with homogeneous Dirichlet
// conditions, kept in weak (face-list) form: stiffness action
// (K u)_i = sum_f c_f (u_i - u_other) + w_i b_i u_i  against the diagonal
// mass matrix w.
class OperatorHandle {
  public:
    OperatorHandle(GridPtr grid, std::vector<double> b_values);

    const GridPtr& grid() const { return grid_; }
    const std::vector<double>& b_values() const { return b_; }

    // y = K u  (weak form; divide by weights for the strong action)
    void apply_stiffness(const std::vector<double>& u, std::vector<double>& y) const;
    // a(u,v) = u' K v
    double bilinear(const std::vector<double>& u, const std::vector<double>& v) const;
    // Rayleigh quotient a(u,u) / ||u||_w^2
    double rayleigh(const std::vector<double>& u) const;

  private:
    GridPtr grid_;
    std::vector<double> b_;
};

OperatorHandle assemble(const GridPtr& grid, const PhaseField& phi,
                        const CoefficientFamily& b, double eps);

struct EigenPair {
    double lambda = 0.0;
    ScalarField w;
    double residual = 0.0;
    int iterations = 0;
};

struct EigenOptions {
    double tol = 1e-8;
    int max_outer = 10000;
    const std::vector<double>* warm_start = nullptr;
};

// Principal eigenpair by inverse power iteration; the inner solve is a direct
// tridiagonal factorization when the stencil allows it (radial grids) and
// Jacobi-preconditioned CG otherwise.  Deterministic: all-ones start unless a
// warm start is supplied; the eigenfunction is positive-normalized.
EigenPair principal_eigenpair(const OperatorHandle& op, double tol);
EigenPair principal_eigenpair(const OperatorHandle& op, const EigenOptions& opt);

// Principal Dirichlet eigenvalue of the Laplacian restricted to the cells
// inside the shape (dofs outside removed; cut-distance ghost faces against
// the shape boundary).  Throws TrivialSpaceError when fewer than 4 cells are
// inside — the discrete version of the lambda = +infinity convention.
EigenPair sharp_eigenvalue(const GridPtr& grid, const SharpShape& shape, double tol);

}  // namespace fk
