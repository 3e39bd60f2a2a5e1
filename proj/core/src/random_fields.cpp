#include "lef/random_fields.hpp"

#include <cmath>
#include <numbers>

#include "lef/quadrature.hpp"

namespace lef {

Field random_nodal_field(const GridPtr& grid, Rng& rng, double lo, double hi) {
  std::vector<double> v(grid->size(), 0.0);
  for (std::size_t n : grid->interior_nodes()) v[n] = rng.uniform(lo, hi);
  return Field(grid, std::move(v), true);
}

Field random_smooth_field(const GridPtr& grid, Rng& rng, int modes) {
  using std::numbers::pi;
  const int my = grid->kind() == DomainKind::Interval ? 1 : modes;
  std::vector<double> coeff(static_cast<std::size_t>(modes * my));
  for (int a = 0; a < modes; ++a)
    for (int b = 0; b < my; ++b)
      coeff[static_cast<std::size_t>(a * my + b)] = rng.uniform(-1.0, 1.0) / ((a + 1.0) * (b + 1.0));
  std::vector<double> v(grid->size(), 0.0);
  for (std::size_t n : grid->interior_nodes()) {
    const double x = grid->x(n), y = grid->y(n);
    double s = 0.0;
    for (int a = 0; a < modes; ++a) {
      const double sx = std::sin((a + 1) * pi * x);
      for (int b = 0; b < my; ++b) {
        const double sy = grid->kind() == DomainKind::Interval ? 1.0 : std::sin((b + 1) * pi * y);
        s += coeff[static_cast<std::size_t>(a * my + b)] * sx * sy;
      }
    }
    v[n] = s;
  }
  return Field(grid, std::move(v), true);
}

std::vector<Field> random_dirichlet_fields(const GridPtr& grid, std::size_t count,
                                           std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Field> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Field f = (i % 2 == 0) ? random_smooth_field(grid, rng, 6)
                           : random_nodal_field(grid, rng, -1.0, 1.0);
    const double s = norm_sup(f);
    out.push_back(s > 0.0 ? (1.0 / s) * f : std::move(f));
  }
  return out;
}

}  // namespace lef
