#pragma once

#include <cstddef>
#include <span>

#include "lef/grid.hpp"

namespace lef {

/// -Δ_h u with the 3-point (interval) or 5-point (rectangle) stencil at
/// interior nodes, 0 on the boundary. Requires a Dirichlet field.
Field apply_laplacian(const Grid& grid, const Field& u);

/// Solves -Δ_h u = rhs at interior nodes with u = 0 on the boundary, by
/// conjugate gradients from a zero initial guess. On return the interior
/// residual satisfies ||-Δ_h u - rhs||_inf <= tol * max(1, ||rhs||_inf).
/// Boundary values of `rhs` are ignored.
///
/// Throws NoConvergence once 20 * interior_count iterations are spent.
Field solve_poisson(const GridPtr& grid, const Field& rhs, double tol);

namespace linalg {

/// y = (-Δ_h + diag(shift)) x on interior nodes and 0 on the boundary.
/// `shift` is either empty or holds one value per node.
void apply_operator(const Grid& grid, std::span<const double> x,
                    std::span<const double> shift, std::span<double> y);

/// Upper bound for the infinity norm of -Δ_h + diag(shift).
double operator_norm_bound(const Grid& grid, std::span<const double> shift);

struct CgOptions {
  /// Absolute bound on the sup norm of the true interior residual.
  double abs_tol = 1e-12;
  std::size_t max_iter = 0;  ///< 0 selects 20 * interior_count.
  /// Also stop once the residual reaches the rounding floor
  /// 32 eps (||A|| ||x|| + ||b||) when abs_tol is below it.
  bool accept_rounding_floor = false;
};

struct CgReport {
  std::size_t iterations = 0;
  double residual = 0.0;
};

/// Conjugate gradients for (-Δ_h + diag(shift)) x = b on interior nodes.
/// The operator must be positive definite. `x` is overwritten and starts
/// from zero. Throws NoConvergence when the cap is hit.
CgReport conjugate_gradient(const Grid& grid, std::span<const double> b,
                            std::span<const double> shift, std::span<double> x,
                            const CgOptions& options);

}  // namespace linalg
}  // namespace lef
