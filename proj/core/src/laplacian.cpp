#include "lef/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lef/error.hpp"

namespace lef {
namespace linalg {

namespace {

double sup_interior(const Grid& grid, std::span<const double> v) {
  double m = 0.0;
  for (std::size_t n : grid.interior_nodes()) m = std::max(m, std::abs(v[n]));
  return m;
}

double dot_interior(const Grid& grid, std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t n : grid.interior_nodes()) s += a[n] * b[n];
  return s;
}

}  // namespace

void apply_operator(const Grid& grid, std::span<const double> x, std::span<const double> shift,
                    std::span<double> y) {
  const std::size_t nx = grid.nx();
  const double ax = 1.0 / (grid.hx() * grid.hx());
  std::fill(y.begin(), y.end(), 0.0);
  if (grid.kind() == DomainKind::Interval) {
    for (std::size_t i = 1; i + 1 < nx; ++i) y[i] = ax * (2.0 * x[i] - x[i - 1] - x[i + 1]);
  } else {
    const double ay = 1.0 / (grid.hy() * grid.hy());
    for (std::size_t j = 1; j + 1 < grid.ny(); ++j) {
      for (std::size_t i = 1; i + 1 < nx; ++i) {
        const std::size_t n = j * nx + i;
        y[n] = ax * (2.0 * x[n] - x[n - 1] - x[n + 1]) + ay * (2.0 * x[n] - x[n - nx] - x[n + nx]);
      }
    }
  }
  if (!shift.empty())
    for (std::size_t n : grid.interior_nodes()) y[n] += shift[n] * x[n];
}

double operator_norm_bound(const Grid& grid, std::span<const double> shift) {
  double a = 4.0 / (grid.hx() * grid.hx());
  if (grid.kind() == DomainKind::Rectangle) a += 4.0 / (grid.hy() * grid.hy());
  double s = 0.0;
  if (!shift.empty())
    for (std::size_t n : grid.interior_nodes()) s = std::max(s, std::abs(shift[n]));
  return a + s;
}

CgReport conjugate_gradient(const Grid& grid, std::span<const double> b,
                            std::span<const double> shift, std::span<double> x,
                            const CgOptions& options) {
  const std::size_t size = grid.size();
  const std::size_t cap =
      options.max_iter > 0 ? options.max_iter : 20 * std::max<std::size_t>(grid.interior_count(), 1);
  const double eps = std::numeric_limits<double>::epsilon();
  const double norm_a = operator_norm_bound(grid, shift);
  const double norm_b = sup_interior(grid, b);

  std::fill(x.begin(), x.end(), 0.0);
  std::vector<double> r(size, 0.0), p(size, 0.0), ap(size, 0.0);

  CgReport report;
  if (norm_b == 0.0) return report;

  // Outer loop restarts from the true residual whenever the recursively
  // updated residual has drifted away from it.
  while (true) {
    apply_operator(grid, x, shift, ap);
    for (std::size_t n : grid.interior_nodes()) r[n] = b[n] - ap[n];
    double true_res = sup_interior(grid, r);
    report.residual = true_res;
    double floor = 0.0;
    if (options.accept_rounding_floor)
      floor = 32.0 * eps * (norm_a * sup_interior(grid, x) + norm_b);
    if (true_res <= std::max(options.abs_tol, floor)) return report;
    if (report.iterations >= cap) throw NoConvergence("conjugate gradient", report.iterations);

    std::copy(r.begin(), r.end(), p.begin());
    double rr = dot_interior(grid, r, r);
    const std::size_t start = report.iterations;
    bool recursive_converged = false;
    while (report.iterations < cap) {
      apply_operator(grid, p, shift, ap);
      const double pap = dot_interior(grid, p, ap);
      if (!(pap > 0.0)) break;
      const double alpha = rr / pap;
      for (std::size_t n : grid.interior_nodes()) {
        x[n] += alpha * p[n];
        r[n] -= alpha * ap[n];
      }
      ++report.iterations;
      if (sup_interior(grid, r) <= options.abs_tol) {
        recursive_converged = true;
        break;
      }
      const double rr_new = dot_interior(grid, r, r);
      const double beta = rr_new / rr;
      rr = rr_new;
      for (std::size_t n : grid.interior_nodes()) p[n] = r[n] + beta * p[n];
    }
    if (!recursive_converged && report.iterations == start)
      throw NoConvergence("conjugate gradient (breakdown)", report.iterations);
  }
}

}  // namespace linalg

Field apply_laplacian(const Grid& grid, const Field& u) {
  require_grid(grid, u);
  if (!u.dirichlet()) throw InvalidField("apply_laplacian needs a Dirichlet field");
  std::vector<double> y(grid.size());
  linalg::apply_operator(grid, u.values(), {}, y);
  return Field(u.grid_ptr(), std::move(y), true);
}

Field solve_poisson(const GridPtr& grid, const Field& rhs, double tol) {
  require_grid(*grid, rhs);
  if (!(tol > 0.0)) throw InvalidArgument("solve_poisson: tol must be positive");
  double norm_b = 0.0;
  for (std::size_t n : grid->interior_nodes()) norm_b = std::max(norm_b, std::abs(rhs[n]));
  std::vector<double> x(grid->size(), 0.0);
  linalg::CgOptions options;
  options.abs_tol = tol * std::max(1.0, norm_b);
  linalg::conjugate_gradient(*grid, rhs.values(), {}, x, options);
  return Field(grid, std::move(x), true);
}

}  // namespace lef
