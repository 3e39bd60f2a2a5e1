#include "lef/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "lef/error.hpp"

namespace lef {

double integrate(const Grid& grid, const Field& f) {
  require_grid(grid, f);
  double s = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) s += grid.quadrature_weight(n) * f[n];
  return s;
}

double norm_sup(const Field& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double norm_lp(const Grid& grid, const Field& f, double r) {
  require_grid(grid, f);
  if (!(r >= 1.0)) throw InvalidArgument("norm_lp: exponent must be >= 1");
  double s = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n)
    s += grid.quadrature_weight(n) * std::pow(std::abs(f[n]), r);
  return std::pow(s, 1.0 / r);
}

double gradient_inner(const Grid& grid, const Field& u, const Field& v) {
  require_grid(grid, u);
  require_grid(grid, v);
  const std::size_t nx = grid.nx();
  const double hx = grid.hx();
  if (grid.kind() == DomainKind::Interval) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < nx; ++i) s += (u[i + 1] - u[i]) * (v[i + 1] - v[i]);
    return s / hx;
  }
  const double hy = grid.hy();
  double sx = 0.0, sy = 0.0;
  for (std::size_t j = 0; j + 1 < grid.ny(); ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const std::size_t n = j * nx + i;
      sx += (u[n + 1] - u[n]) * (v[n + 1] - v[n]);
      sy += (u[n + nx] - u[n]) * (v[n + nx] - v[n]);
    }
  }
  return sx * hy / hx + sy * hx / hy;
}

double dirichlet_energy(const Grid& grid, const Field& u) { return gradient_inner(grid, u, u); }

double norm_h1(const Grid& grid, const Field& u) { return std::sqrt(dirichlet_energy(grid, u)); }

}  // namespace lef
