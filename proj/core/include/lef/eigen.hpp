#pragma once

#include <cstddef>

#include "lef/grid.hpp"

namespace lef {

struct EigenPair {
  double eigenvalue;
  /// Dirichlet, unit sup norm, positive at interior nodes.
  Field eigenfunction;
  /// ||(L - mu) phi||_inf with ||phi||_inf = 1 at exit.
  double residual;
  std::size_t iterations;
};

/// Smallest eigenvalue of the discrete Dirichlet Laplacian with its positive
/// eigenfunction, by inverse power iteration.
EigenPair principal_eigenpair(const GridPtr& grid, double tol);

/// Smallest eigenvalue of -Δ_h - diag(c), by inverse power iteration on the
/// operator shifted below its spectrum. Stops once the eigen-residual is at
/// most tol * max(1, |mu|); gives up after 10000 iterations.
EigenPair smallest_eigenvalue_shifted(const GridPtr& grid, const Field& c, double tol);

}  // namespace lef
