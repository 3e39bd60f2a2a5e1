#include "lef/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lef/error.hpp"
#include "lef/laplacian.hpp"

namespace lef {

namespace {

constexpr std::size_t kMaxEigenIterations = 10000;

}  // namespace

EigenPair smallest_eigenvalue_shifted(const GridPtr& grid, const Field& c, double tol) {
  require_grid(*grid, c);
  if (!(tol > 0.0)) throw InvalidArgument("eigensolver: tol must be positive");
  const Grid& g = *grid;
  const auto interior = g.interior_nodes();

  double c_max = 0.0;
  bool any = false;
  for (std::size_t n : interior) {
    if (!std::isfinite(c[n])) throw InvalidArgument("eigensolver: potential is not finite");
    c_max = any ? std::max(c_max, c[n]) : c[n];
    any = true;
  }

  // -Δ_h - diag(c) >= lambda_1(-Δ_h) - max c, so sigma sits one unit below
  // the spectrum and the shifted operator is a positive definite M-matrix.
  const double sigma = g.principal_eigenvalue_exact() - c_max - 1.0;

  std::vector<double> minus_c(g.size(), 0.0), shift(g.size(), 0.0);
  for (std::size_t n : interior) {
    minus_c[n] = -c[n];
    shift[n] = -c[n] - sigma;
  }

  std::vector<double> x(g.size(), 0.0), y(g.size(), 0.0), lx(g.size(), 0.0);
  for (std::size_t n : interior) x[n] = 1.0;

  linalg::CgOptions cg;
  cg.abs_tol = std::min(1e-3 * tol, 1e-12);
  cg.accept_rounding_floor = true;

  double mu = 0.0;
  double residual = 0.0;
  for (std::size_t it = 1; it <= kMaxEigenIterations; ++it) {
    linalg::conjugate_gradient(g, x, shift, y, cg);
    double sup = 0.0;
    for (std::size_t n : interior) sup = std::max(sup, std::abs(y[n]));
    for (std::size_t n : interior) x[n] = y[n] / sup;

    linalg::apply_operator(g, x, minus_c, lx);
    double num = 0.0, den = 0.0;
    for (std::size_t n : interior) {
      num += x[n] * lx[n];
      den += x[n] * x[n];
    }
    mu = num / den;
    residual = 0.0;
    for (std::size_t n : interior) residual = std::max(residual, std::abs(lx[n] - mu * x[n]));
    if (residual <= tol * std::max(1.0, std::abs(mu))) {
      // Inverse of a nonsingular M-matrix is positive, so the iterate keeps
      // one sign; fix it positive.
      double s = 0.0;
      for (std::size_t n : interior) s += x[n];
      if (s < 0.0)
        for (double& v : x) v = -v;
      for (std::size_t n = 0; n < x.size(); ++n)
        if (!g.is_interior(n)) x[n] = 0.0;
      return {mu, Field(grid, x, true), residual, it};
    }
  }
  throw NoConvergence("inverse power iteration", kMaxEigenIterations);
}

EigenPair principal_eigenpair(const GridPtr& grid, double tol) {
  return smallest_eigenvalue_shifted(grid, Field::zeros(grid, false), tol);
}

}  // namespace lef
