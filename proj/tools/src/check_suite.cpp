#include "lefcli/check_suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>

#include "lef/branch_minus.hpp"
#include "lef/branch_plus.hpp"
#include "lef/eigen.hpp"
#include "lef/error.hpp"
#include "lef/laplacian.hpp"
#include "lef/quadrature.hpp"
#include "lef/random_fields.hpp"
#include "lef/shooting.hpp"

namespace lefcli {

namespace {

using namespace lef;

constexpr std::size_t kShootingSteps = 4000;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

CheckLine at_most(int g, std::string name, double value, double limit) {
  return {g, std::move(name), value <= limit, "value=" + num(value) + " limit<=" + num(limit)};
}

CheckLine at_least(int g, std::string name, double value, double limit) {
  return {g, std::move(name), value >= limit, "value=" + num(value) + " limit>=" + num(limit)};
}

// Golden-section minimization in extended precision so that the located
// argument is accurate well below 1e-8.
long double golden_argmin(const std::function<long double(long double)>& f, long double lo,
                          long double hi) {
  const long double r = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  long double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  long double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 200 && hi - lo > 1e-30L; ++i) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5L * (lo + hi);
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

ProblemSpec with_variant(ProblemSpec spec, Variant v) {
  spec.variant = v;
  return spec;
}

CheckReport analytic_group() {
  CheckReport out;
  const auto line = build_interval(257);
  const Field v = torsion_function(line, 1e-13);
  double err = 0.0;
  for (std::size_t n = 0; n < v.size(); ++n) {
    const double x = line->x(n);
    err = std::max(err, std::abs(v[n] - 0.5 * x * (1.0 - x)));
  }
  out.push_back(at_most(1, "torsion_interval_257", err, 1e-10));
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const EigenPair e1 = principal_eigenpair(line, 1e-10);
  out.push_back(at_most(1, "lambda1_interval_257", relative(e1.eigenvalue, pi2), 1e-3));
  const EigenPair e2 = principal_eigenpair(build_rectangle(65, 65), 1e-10);
  out.push_back(at_most(1, "lambda1_square_65", std::abs(e2.eigenvalue - 2.0 * pi2), 1e-2));
  return out;
}

CheckReport supersolution_group() {
  CheckReport out;
  const double A = 1.0, B = 1.0, q = 0.5, p = 3.0;
  const SuperSolutionConstants c = supersolution_constants(A, B, q, p);
  const auto coefficient = [&](long double lambda) {
    return [=](long double t) {
      return lambda * A * std::pow(t, (long double)q - 1.0L) + B * std::pow(t, (long double)p - 1.0L);
    };
  };
  const long double t_star = golden_argmin(coefficient(1.0L), 1e-6L, 10.0L);
  out.push_back(at_most(2, "C_matches_golden_section", relative(c.C, (double)t_star), 1e-8));

  // λ0 is where min_t (λ A t^{q-1} + B t^{p-1}) equals 1.
  const auto min_coefficient = [&](long double lambda) {
    const auto f = coefficient(lambda);
    return f(golden_argmin(f, 1e-8L, 100.0L));
  };
  long double lo = 1e-6L, hi = 1e6L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = std::sqrt(lo * hi);
    (min_coefficient(mid) < 1.0L ? lo : hi) = mid;
  }
  out.push_back(at_most(2, "lambda0_matches_golden_section",
                        relative(c.lambda0, (double)std::sqrt(lo * hi)), 1e-8));
  out.push_back(at_most(2, "lambda0_identity", std::abs(c.supersolution_ratio(c.lambda0) - 1.0), 1e-10));
  return out;
}

CheckReport plus_branch_group(const RunConfig& config) {
  CheckReport out;
  const RunSetup setup = make_setup(config);
  const GridPtr& grid = setup.grid;
  const ProblemSpec spec = with_variant(setup.spec, Variant::Plus);
  const IterationOptions io = iteration_options(config);
  const LambdaStarEstimate est = estimate_lambda_star_plus(grid, spec, config.tol_lambda, io);
  const WeakFormTests tests(grid);
  const Field v = torsion_function(grid, 1e-12);
  const SuperSolutionConstants c = supersolution_constants(spec, norm_sup(v));

  constexpr int kPoints = 20;
  std::size_t failures = 0;
  double min_increment = std::numeric_limits<double>::infinity();
  double super_slack = std::numeric_limits<double>::infinity();
  double weak = 0.0, energy = -std::numeric_limits<double>::infinity(), identity = 0.0;
  double stability = std::numeric_limits<double>::infinity();
  double combined = std::numeric_limits<double>::infinity();
  double branch = std::numeric_limits<double>::infinity();
  std::optional<Field> previous;
  for (int i = 1; i <= kPoints; ++i) {
    const double lambda = est.lower * i / kPoints;
    const Field w = solve_concave(grid, lambda, spec.potentials.k, spec.q, io.tol);
    const SolveReport r = monotone_iterate(grid, spec, lambda, w, io);
    if (!r.converged) {
      ++failures;
      previous.reset();
      continue;
    }
    const Field& u = r.solution;
    min_increment = std::min(min_increment, r.min_increment);
    if (lambda <= c.lambda0) super_slack = std::min(super_slack, min_value(c.M(lambda) * v - u));
    weak = std::max(weak, tests.residual(spec, lambda, u));
    energy = std::max(energy, energy_plus(grid, spec, lambda, u));
    identity = std::max(identity, energy_identity_residual(grid, spec, lambda, u));
    stability = std::min(stability, stability_integral_slack(grid, spec, lambda, u));
    double kqi = 0.0, hpi = 0.0;
    for (std::size_t n = 0; n < u.size(); ++n) {
      const double wq = grid->quadrature_weight(n);
      kqi += wq * spec.potentials.k[n] * pos_pow(u[n], spec.q + 1.0);
      hpi += wq * spec.potentials.h[n] * pos_pow(u[n], spec.p + 1.0);
    }
    combined = std::min(combined, lambda * (1.0 - spec.q) * kqi - (spec.p - 1.0) * hpi);
    if (previous) branch = std::min(branch, min_value(u - *previous));
    previous = u;
  }
  out.push_back(at_most(3, "all_points_converged", static_cast<double>(failures), 0.0));
  out.push_back(at_least(3, "iterates_nondecreasing", min_increment, -1e-12));
  if (std::isfinite(super_slack))
    out.push_back(at_least(3, "below_supersolution", super_slack, -1e-12));
  out.push_back(at_most(3, "weak_residual", weak, 1e-6));
  out.push_back({3, "energy_negative", energy < 0.0, "value=" + num(energy) + " limit<0"});
  out.push_back(at_most(3, "energy_identity_residual", identity, 1e-6));
  out.push_back(at_least(3, "semistability_integral_slack", stability, -1e-8));
  out.push_back(at_least(3, "combined_slack", combined, -1e-8));
  out.push_back(at_least(3, "branch_monotone_in_lambda", branch, -1e-8));
  return out;
}

CheckReport plus_ordering_group(const RunConfig& config) {
  CheckReport out;
  const RunSetup setup = make_setup(config);
  const GridPtr& grid = setup.grid;
  const ProblemSpec spec = with_variant(setup.spec, Variant::Plus);
  const IterationOptions io = iteration_options(config);
  const LambdaStarEstimate est = estimate_lambda_star_plus(grid, spec, config.tol_lambda, io);
  out.push_back(at_least(4, "lambda0_below_bracket", est.lower - est.lambda0, 0.0));
  out.push_back(at_least(4, "bracket_below_lambda_prime", est.lambda_prime - est.upper, 0.0));

  const double lambda1 = principal_eigenpair(grid, 1e-10).eigenvalue;
  const long double ratio = lambda1 / spec.potentials.m;
  const long double q = spec.q, p = spec.p;
  const auto gap = [&](long double t) {
    return -(ratio * std::pow(t, 1.0L - q) - std::pow(t, p - q));
  };
  const long double t_max = 2.0L * std::pow(ratio, 1.0L / (p - 1.0L));
  const long double peak = -gap(golden_argmin(gap, 0.0L, t_max));
  out.push_back(at_most(4, "lambda_prime_closed_form",
                        relative(est.lambda_prime / (1.0 + 1e-12), (double)peak), 1e-8));

  const double beyond = 1.5 * est.lambda_prime;
  const Field w = solve_concave(grid, beyond, spec.potentials.k, spec.q, io.tol);
  const SolveReport r = monotone_iterate(grid, spec, beyond, w, io);
  out.push_back({4, "diverges_at_1.5_lambda_prime", r.diverged && !r.converged,
                 "diverged=" + std::to_string(r.diverged) + " iterations=" +
                     std::to_string(r.iterations) + " norm_cap=" + num(io.norm_cap)});
  return out;
}

CheckReport cross_validation_group(const RunConfig& config) {
  CheckReport out;
  const GridPtr grid = build_interval(401);
  const ProblemSpec spec = make_problem(config.q, config.p, Variant::Plus, unit_potentials(grid), *grid);
  const IterationOptions io = iteration_options(config);
  const LambdaStarEstimate est = estimate_lambda_star_plus(grid, spec, config.tol_lambda, io);
  const auto oracle = oracle_lambda_star(config.q, config.p, Variant::Plus, config.tol_lambda,
                                         default_slope_grid(), kShootingSteps);
  const double oracle_mid = 0.5 * (oracle.first + oracle.second);
  out.push_back(at_most(5, "lambda_star_plus_vs_shooting", relative(est.midpoint(), oracle_mid), 1e-2));

  const double lambda = 0.5 * est.midpoint();
  const WeakFormTests tests(grid);
  const SolveReport pde = minimal_solution(grid, spec, lambda, io, &tests);
  const auto roots = solution_count(lambda, config.q, config.p, Variant::Plus,
                                    default_slope_grid(), kShootingSteps);
  if (roots.empty() || !pde.converged) {
    out.push_back({5, "minimal_profile_vs_shooting", false,
                   "roots=" + std::to_string(roots.size()) + " pde_converged=" + std::to_string(pde.converged)});
    return out;
  }
  const Field ode = profile_on_grid(shoot(lambda, config.q, config.p, Variant::Plus, roots.front(), kShootingSteps), grid);
  out.push_back(at_most(5, "minimal_profile_vs_shooting",
                        norm_sup(pde.solution - ode) / norm_sup(ode), 1e-2));
  double worst = 0.0;
  for (double s : roots) {
    const Field f = profile_on_grid(shoot(lambda, config.q, config.p, Variant::Plus, s, kShootingSteps), grid);
    worst = std::max(worst, tests.residual(spec, lambda, f));
  }
  out.push_back(at_most(5, "shooting_roots_weak_residual", worst, 1e-4));
  return out;
}

CheckReport minus_branch_group(const RunConfig& config) {
  CheckReport out;
  const RunSetup setup = make_setup(config);
  const GridPtr& grid = setup.grid;
  const Grid& g = *grid;
  const ProblemSpec spec = with_variant(setup.spec, Variant::Minus);
  const MinimizeOptions mo = minimize_options(config);
  const NontrivialFloors nf = floors(config);
  const ConstrainedMinimum cap = capital_lambda(grid, spec, mo);
  const double big = cap.value + 1.0;

  // Central differences against the nodal gradient.
  const auto fields = random_dirichlet_fields(grid, 40, config.seed);
  double fd_error = 0.0;
  for (std::size_t i = 0; i < 20; ++i) {
    const Field& u = fields[2 * i];
    const Field& d = fields[2 * i + 1];
    const double eps = 1e-6;
    const double fd = (energy_minus(grid, spec, big, u + eps * d) -
                       energy_minus(grid, spec, big, u - eps * d)) / (2.0 * eps);
    const Field grad = grad_energy_minus(grid, spec, big, u);
    double an = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) an += grad[n] * d[n];
    fd_error = std::max(fd_error, std::abs(fd - an) / std::abs(an));
  }
  out.push_back(at_most(6, "gradient_central_difference", fd_error, 1e-5));

  const auto probes = coercivity_probe_fields(grid, spec.q);
  const EmbeddingFactors ef = embedding_factors(grid, spec.q, spec.p, probes);
  double floor_slack = std::numeric_limits<double>::infinity();
  for (double lambda : {1.0, big}) {
    const CoercivityParams cp = coercivity_params(spec, lambda, ef);
    for (const Field& f : probes) {
      const double base = cp.t_min / norm_h1(g, f);
      for (int j = -12; j <= 3; ++j) {
        const Field u = (base * std::ldexp(1.0, j)) * f;
        const double slack =
            energy_minus(grid, spec, lambda, u) - 0.5 * dirichlet_energy(g, u) - cp.m_min;
        floor_slack = std::min(floor_slack, slack);
      }
    }
  }
  out.push_back(at_least(6, "coercivity_floor_probe_set", floor_slack, -1e-8));

  const SolveReport free_big = minimize_free(grid, spec, big, mo);
  out.push_back(at_most(6, "energy_at_capital_lambda_plus_one", free_big.energy, cap.value - big + 1e-6));
  out.push_back(at_most(6, "descent_energy_nonincreasing", free_big.max_energy_rise, 0.0));
  out.push_back(at_most(6, "minimizer_gradient", norm_sup(grad_energy_minus(grid, spec, big, free_big.solution)),
                        mo.gradient_tol));

  double constraint = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n)
    constraint += g.quadrature_weight(n) * spec.potentials.k[n] *
                  std::pow(std::abs(cap.minimizer[n]), spec.q + 1.0);
  constraint /= spec.q + 1.0;
  out.push_back(at_most(6, "capital_lambda_constraint", std::abs(constraint - 1.0), 1e-10));

  const SolveReport at_cap = minimize_free(grid, spec, cap.value, mo);
  const SolveReport raised = obstacle_minimize(grid, spec, big, at_cap.solution, mo);
  out.push_back(at_least(6, "obstacle_feasible", min_value(raised.solution - at_cap.solution), 0.0));
  const double obstacle_energy = energy_minus(grid, spec, big, at_cap.solution);
  out.push_back(at_most(6, "obstacle_energy_below_obstacle", raised.energy - obstacle_energy,
                        1e-12 * (1.0 + std::abs(obstacle_energy))));
  const SolveReport zero_obstacle = obstacle_minimize(grid, spec, big, Field::zeros(grid), mo);
  out.push_back(at_most(6, "zero_obstacle_matches_free", std::abs(zero_obstacle.energy - free_big.energy), 1e-8));

  const LambdaStarEstimate est = estimate_lambda_star_minus(grid, spec, config.tol_lambda, mo, nf);
  out.push_back(at_least(6, "bracket_below_capital_lambda", cap.value - est.upper, 0.0));
  out.push_back(at_least(6, "capital_lambda_above_midpoint", cap.value - est.midpoint(), -config.tol_lambda));
  const SolveReport above = minimize_free(grid, spec, est.upper, mo);
  out.push_back({6, "nontrivial_above_bracket", classify_nontrivial(above, nf),
                 "sup=" + num(above.sup_norm) + " energy=" + num(above.energy)});

  std::vector<double> lambdas;
  for (int i = 1; i <= 20; ++i) lambdas.push_back(big * i / 20.0);
  const BifurcationDiagram sweep = sweep_branch_minus(grid, spec, lambdas, mo, nf);
  std::size_t inversions = 0;
  bool seen = false;
  for (const auto& r : sweep.records) {
    if (*r.classified_nontrivial) seen = true;
    else if (seen) ++inversions;
  }
  out.push_back(at_most(6, "upset_sweep_inversions", static_cast<double>(inversions), 0.0));
  return out;
}

CheckReport floor_sensitivity_group(const RunConfig& config) {
  const RunSetup setup = make_setup(config);
  const ProblemSpec spec = with_variant(setup.spec, Variant::Minus);
  const MinimizeOptions mo = minimize_options(config);
  std::string trend;
  bool nonincreasing = true;
  double last = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    NontrivialFloors nf = floors(config);
    nf.nontrivial_floor = std::ldexp(config.nontrivial_floor, -i);
    const auto est = estimate_lambda_star_minus(setup.grid, spec, config.tol_lambda, mo, nf);
    const double mid = est.midpoint();
    if (mid > last) nonincreasing = false;
    last = mid;
    trend += (i ? " " : "") + std::string("floor=") + num(nf.nontrivial_floor) + ":midpoint=" + num(mid);
  }
  return {{8, "midpoint_nonincreasing_as_floor_halves", nonincreasing, trend}};
}

}  // namespace

const std::vector<int>& suite_groups() {
  static const std::vector<int> groups{1, 2, 3, 4, 5, 6, 8};
  return groups;
}

CheckReport run_check_group(int group, const RunConfig& config) {
  switch (group) {
    case 1: return analytic_group();
    case 2: return supersolution_group();
    case 3: return plus_branch_group(config);
    case 4: return plus_ordering_group(config);
    case 5: return cross_validation_group(config);
    case 6: return minus_branch_group(config);
    case 8: return floor_sensitivity_group(config);
    default: throw InvalidArgument("unknown check group " + std::to_string(group));
  }
}

void print_check_line(std::ostream& out, const CheckLine& line) {
  out << (line.passed ? "PASS" : "FAIL") << " [" << line.criterion << "] " << line.name << ' '
      << line.detail << '\n';
}

bool all_passed(const CheckReport& report) {
  return std::all_of(report.begin(), report.end(), [](const CheckLine& l) { return l.passed; });
}

}  // namespace lefcli
