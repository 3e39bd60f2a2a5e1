#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "lef/diagram.hpp"
#include "lef/grid.hpp"
#include "lef/problem.hpp"

namespace lef {

/// One initial-value integration of u'' = -f(u) on [0,1] from (u,u')(0) = (0,s).
struct ShootingResult {
  double slope;
  /// u(1); after an interior sign change the linear continuation of the
  /// clamped problem is used, which is exact because f(u) = 0 for u < 0.
  double terminal;
  /// u on the uniform mesh x_i = i / steps.
  std::vector<double> profile;
  bool crossed_zero = false;
  /// |u| exceeded 1e150; terminal is then reported as +max double.
  bool blew_up = false;
};

/// Classical RK4 for u'' = -(λ u_+^q ± u_+^p) with `steps` uniform steps.
/// Requires s > 0 and steps >= 1000.
ShootingResult shoot(double lambda, double q, double p, Variant variant, double s,
                     std::size_t steps);

/// Same integrator for an arbitrary right-hand side u'' = -f(u), no clamp.
ShootingResult shoot(const std::function<double(double)>& f, double s, std::size_t steps);

/// 64 logarithmically spaced slopes in [1e-3, 1e3].
std::vector<double> default_slope_grid();
std::vector<double> log_slope_grid(double lo, double hi, std::size_t count);

/// Slopes s with u(1; s) = 0, ascending. Sign changes between neighbouring
/// grid slopes are refined by bisection to 1e-10 in s. Negative local
/// maxima of the sampled terminal values are maximized by golden-section
/// search so that closely spaced root pairs near a fold are not missed.
std::vector<double> solution_count(double lambda, double q, double p, Variant variant,
                                   const std::vector<double>& s_grid, std::size_t steps);

struct OracleOptions {
  double lambda_lo = 1e-3;
  double lambda_hi = 1e3;
  /// Minus variant only: a root counts when its profile sup exceeds this.
  double nontrivial_floor = 1e-4;
};

/// Bracket of width <= tol_lambda around the existence threshold.
/// Plus: existence means at least one root. Minus: at least one root whose
/// profile exceeds the nontrivial floor. Throws BracketInvalid when
/// existence does not differ between the ends of the λ range.
std::pair<double, double> oracle_lambda_star(double q, double p, Variant variant, double tol_lambda,
                                             const std::vector<double>& s_grid, std::size_t steps,
                                             const OracleOptions& options = {});

/// Linear interpolation of a profile onto the nodes of an interval grid.
Field profile_on_grid(const ShootingResult& result, const GridPtr& grid);

/// One record per λ from the smallest root (the minimal solution for the
/// plus variant); `iterations` holds the number of roots and `converged`
/// whether any root was found.
BifurcationDiagram oracle_diagram(double q, double p, Variant variant,
                                  const std::vector<double>& lambdas,
                                  const std::vector<double>& s_grid, std::size_t steps);

}  // namespace lef
