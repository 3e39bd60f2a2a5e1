#pragma once

#include "lef/grid.hpp"

namespace lef {

/// Composite trapezoidal rule over the domain.
double integrate(const Grid& grid, const Field& f);

double norm_sup(const Field& f);

/// (∫|f|^r)^(1/r) by the trapezoidal rule; r >= 1.
double norm_lp(const Grid& grid, const Field& f, double r);

/// ∫∇u·∇v with forward differences on cells: each cell [i,i+1]x[j,j+1]
/// contributes its bottom x-edge and left y-edge difference quotients. For
/// Dirichlet fields this equals h_x h_y <u, -Δ_h v>.
double gradient_inner(const Grid& grid, const Field& u, const Field& v);

/// ∫|∇u|^2 in the same discretization.
double dirichlet_energy(const Grid& grid, const Field& u);

/// (∫|∇u|^2)^(1/2).
double norm_h1(const Grid& grid, const Field& u);

}  // namespace lef
