#include "lef/branch_plus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lef/error.hpp"
#include "lef/laplacian.hpp"
#include "lef/quadrature.hpp"
#include "lef/random_fields.hpp"
#include "parallel.hpp"

namespace lef {

namespace {

constexpr std::size_t kConcaveMaxIter = 10000;
constexpr std::size_t kWeakRandomTests = 20;

double sup_interior(const Grid& g, std::span<const double> v) {
  double m = 0.0;
  for (std::size_t n : g.interior_nodes()) m = std::max(m, std::abs(v[n]));
  return m;
}

// (-Δ_h)^{-1} b with the residual bounded relative to ||b||.
void poisson_relative(const Grid& g, std::span<const double> b, double rel_tol,
                      std::span<double> x) {
  linalg::CgOptions cg;
  cg.abs_tol = rel_tol * sup_interior(g, b);
  cg.accept_rounding_floor = true;
  linalg::conjugate_gradient(g, b, {}, x, cg);
}

// ∫ w |u|^r
double weighted_power_integral(const Grid& g, const Field& w, const Field& u, double r) {
  double s = 0.0;
  for (std::size_t n = 0; n < u.size(); ++n)
    s += g.quadrature_weight(n) * w[n] * std::pow(std::abs(u[n]), r);
  return s;
}

double plus_rhs(const ProblemSpec& spec, double lambda, std::size_t n, double u) {
  return lambda * spec.potentials.k[n] * pos_pow(u, spec.q) +
         spec.potentials.h[n] * pos_pow(u, spec.p);
}

void check_lambda_positive(double lambda, const char* where) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw InvalidArgument(std::string(where) + ": lambda must be positive");
}

}  // namespace

Field torsion_function(const GridPtr& grid, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("torsion_function: tol must be positive");
  const Grid& g = *grid;
  std::vector<double> b(g.size(), 0.0), v(g.size(), 0.0);
  for (std::size_t n : g.interior_nodes()) b[n] = 1.0;
  linalg::CgOptions cg;
  cg.abs_tol = tol;
  cg.accept_rounding_floor = true;
  linalg::conjugate_gradient(g, b, {}, v, cg);
  return Field(grid, std::move(v), true);
}

Field solve_concave(const GridPtr& grid, double lambda, const Field& k, double q, double tol) {
  check_lambda_positive(lambda, "solve_concave");
  const Field v = torsion_function(grid, 1e-12);
  const double scale = std::pow(lambda * max_value(k) * std::pow(norm_sup(v), q), 1.0 / (1.0 - q));
  return solve_concave(grid, lambda, k, q, tol, scale * v);
}

Field solve_concave(const GridPtr& grid, double lambda, const Field& k, double q, double tol,
                    const Field& seed) {
  check_lambda_positive(lambda, "solve_concave");
  if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("solve_concave: need 0 < q < 1");
  if (!(tol > 0.0)) throw InvalidArgument("solve_concave: tol must be positive");
  require_grid(*grid, k);
  require_grid(*grid, seed);
  if (!seed.dirichlet() || !(norm_sup(seed) > 0.0))
    throw InvalidArgument("solve_concave: seed must be a nonzero Dirichlet field");

  const Grid& g = *grid;
  std::vector<double> u = seed.to_vector(), rhs(g.size(), 0.0), next(g.size(), 0.0);
  for (std::size_t it = 1; it <= kConcaveMaxIter; ++it) {
    for (std::size_t n : g.interior_nodes()) rhs[n] = lambda * k[n] * pos_pow(u[n], q);
    poisson_relative(g, rhs, 1e-13, next);
    double update = 0.0;
    for (std::size_t n : g.interior_nodes()) update = std::max(update, std::abs(next[n] - u[n]));
    u.swap(next);
    if (update <= tol * sup_interior(g, u)) {
      for (std::size_t n = 0; n < u.size(); ++n)
        if (!g.is_interior(n)) u[n] = 0.0;
      return Field(grid, std::move(u), true);
    }
  }
  throw NoConvergence("concave fixed-point iteration", kConcaveMaxIter);
}

double SuperSolutionConstants::M(double lambda) const {
  return C * std::pow(lambda, 1.0 / (p - q));
}

double SuperSolutionConstants::supersolution_ratio(double lambda) const {
  const double m = M(lambda);
  return lambda * A * std::pow(m, q - 1.0) + B * std::pow(m, p - 1.0);
}

SuperSolutionConstants supersolution_constants(double A, double B, double q, double p) {
  if (!(A > 0.0 && B > 0.0)) throw InvalidArgument("supersolution constants need A, B > 0");
  if (!(q > 0.0 && q < 1.0 && p > 1.0)) throw InvalidSpec("exponents must satisfy 0 < q < 1 < p");
  const double C = std::pow(A * (1.0 - q) / (B * (p - 1.0)), 1.0 / (p - q));
  const double min_coeff = A * std::pow(C, q - 1.0) + B * std::pow(C, p - 1.0);
  const double lambda0 = std::pow(min_coeff, -(p - q) / (p - 1.0));
  return {A, B, C, lambda0, 0.0, q, p};
}

SuperSolutionConstants supersolution_constants(const ProblemSpec& spec, double sup_v) {
  if (!(sup_v > 0.0)) throw InvalidArgument("sup_v must be positive");
  if (!(spec.q > 0.0 && spec.q < 1.0 && spec.p > 1.0))
    throw InvalidSpec("exponents must satisfy 0 < q < 1 < p");
  const double A = spec.potentials.sup_k * std::pow(sup_v, spec.q);
  const double B = spec.potentials.sup_h * std::pow(sup_v, spec.p);
  SuperSolutionConstants c = supersolution_constants(A, B, spec.q, spec.p);
  c.sup_v = sup_v;
  return c;
}

SubSuperPair subsuper_pair(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                           double tol) {
  validate(spec, *grid);
  check_lambda_positive(lambda, "subsuper_pair");
  const Field v = torsion_function(grid, tol);
  const SuperSolutionConstants c = supersolution_constants(spec, norm_sup(v));
  if (lambda > c.lambda0 * (1.0 + 1e-12))
    throw InvalidArgument("subsuper_pair: lambda exceeds lambda0");
  const Field w = solve_concave(grid, lambda, spec.potentials.k, spec.q, tol);
  const Field super = c.M(lambda) * v;
  double eps = 0.5;
  for (int j = 1; j <= 40; ++j, eps *= 0.5) {
    bool ordered = true;
    for (std::size_t n = 0; n < w.size() && ordered; ++n) ordered = eps * w[n] <= super[n];
    if (ordered) return {eps, eps * w, super};
  }
  throw OrderingFailed("no dyadic epsilon down to 2^-40 orders eps*w below M*v");
}

SolveReport monotone_iterate(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                             const Field& u0, const IterationOptions& options) {
  validate(spec, *grid);
  require_grid(*grid, u0);
  if (!u0.dirichlet()) throw InvalidArgument("monotone_iterate: u0 must be Dirichlet");
  if (min_value(u0) < 0.0) throw InvalidArgument("monotone_iterate: u0 must be nonnegative");
  if (!(lambda >= 0.0)) throw InvalidArgument("monotone_iterate: lambda must be >= 0");

  const Grid& g = *grid;
  const auto interior = g.interior_nodes();
  std::vector<double> u = u0.to_vector(), delta(g.size(), 0.0), rhs(g.size(), 0.0);
  std::vector<double> g_prev(g.size(), 0.0), g_curr(g.size(), 0.0);

  // First increment: g(u0) - (-Δ_h) u0.
  linalg::apply_operator(g, u, {}, rhs);
  for (std::size_t n : interior) {
    g_curr[n] = plus_rhs(spec, lambda, n, u[n]);
    rhs[n] = g_curr[n] - rhs[n];
  }

  SolveReport report{.solution = u0, .lambda = lambda};
  report.min_increment = std::numeric_limits<double>::infinity();
  bool finite = true;
  while (report.iterations < options.max_iter) {
    poisson_relative(g, rhs, options.linear_tol, delta);
    ++report.iterations;
    double update = 0.0, sup = 0.0;
    for (std::size_t n : interior) {
      u[n] += delta[n];
      update = std::max(update, std::abs(delta[n]));
      report.min_increment = std::min(report.min_increment, delta[n]);
      if (!std::isfinite(u[n])) finite = false;
      sup = std::max(sup, std::abs(u[n]));
    }
    if (!finite || sup > options.norm_cap) {
      report.diverged = true;
      break;
    }
    if (update <= options.tol * std::max(1.0, sup)) {
      report.converged = true;
      report.trivial = sup == 0.0;
      break;
    }
    g_prev.swap(g_curr);
    for (std::size_t n : interior) {
      g_curr[n] = plus_rhs(spec, lambda, n, u[n]);
      rhs[n] = g_curr[n] - g_prev[n];
    }
    for (std::size_t n : interior)
      if (!std::isfinite(rhs[n])) finite = false;
    if (!finite) {
      report.diverged = true;
      break;
    }
  }
  if (report.iterations == 0) report.min_increment = 0.0;

  if (finite) {
    report.solution = Field(grid, std::move(u), true);
  } else {
    // Keep the finite part so callers still get a field back.
    for (double& x : u)
      if (!std::isfinite(x)) x = std::copysign(std::numeric_limits<double>::max(), x);
    report.solution = Field(grid, std::move(u), true);
  }
  report.sup_norm = norm_sup(report.solution);
  if (!report.diverged) report.h1_norm = norm_h1(g, report.solution);
  return report;
}

WeakFormTests::WeakFormTests(const GridPtr& grid, std::uint64_t seed) : grid_(grid) {
  EigenPair phi = principal_eigenpair(grid, 1e-10);
  lambda1_ = phi.eigenvalue;
  fields_.push_back(std::move(phi.eigenfunction));
  Field v = torsion_function(grid, 1e-12);
  fields_.push_back((1.0 / norm_sup(v)) * v);
  for (auto& f : random_dirichlet_fields(grid, kWeakRandomTests, seed)) fields_.push_back(std::move(f));
}

double WeakFormTests::residual(const ProblemSpec& spec, double lambda, const Field& u) const {
  const Grid& g = *grid_;
  require_grid(g, u);
  if (!u.dirichlet()) throw InvalidArgument("weak_residual: u must be Dirichlet");
  const double sign = spec.variant == Variant::Plus ? 1.0 : -1.0;
  std::vector<double> rhs(g.size(), 0.0);
  for (std::size_t n = 0; n < g.size(); ++n)
    rhs[n] = lambda * spec.potentials.k[n] * pos_pow(u[n], spec.q) +
             sign * spec.potentials.h[n] * pos_pow(u[n], spec.p);
  const Field source(grid_, std::move(rhs), false);

  const auto deviation = [&](const Field& phi) {
    return std::abs(gradient_inner(g, u, phi) - integrate(g, pointwise_product(source, phi)));
  };
  double worst = 0.0;
  for (const Field& phi : fields_) worst = std::max(worst, deviation(phi));
  const double su = norm_sup(u);
  if (su > 0.0) worst = std::max(worst, deviation((1.0 / su) * u));
  return worst / (1.0 + norm_h1(g, u));
}

double weak_residual(const GridPtr& grid, const ProblemSpec& spec, double lambda, const Field& u,
                     std::uint64_t seed) {
  return WeakFormTests(grid, seed).residual(spec, lambda, u);
}

double energy_plus(const GridPtr& grid, const ProblemSpec& spec, double lambda, const Field& u) {
  const Grid& g = *grid;
  require_grid(g, u);
  return 0.5 * dirichlet_energy(g, u) -
         lambda / (spec.q + 1.0) * weighted_power_integral(g, spec.potentials.k, u, spec.q + 1.0) -
         1.0 / (spec.p + 1.0) * weighted_power_integral(g, spec.potentials.h, u, spec.p + 1.0);
}

double energy_identity_residual(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                                const Field& u) {
  const Grid& g = *grid;
  require_grid(g, u);
  const Field up = pointwise_max(u, Field::zeros(grid, u.dirichlet()));
  const double grad2 = dirichlet_energy(g, u);
  const double rhs = lambda * weighted_power_integral(g, spec.potentials.k, up, spec.q + 1.0) +
                     weighted_power_integral(g, spec.potentials.h, up, spec.p + 1.0);
  return std::abs(grad2 - rhs) / (1.0 + grad2);
}

double stability_integral_slack(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                                const Field& u) {
  const Grid& g = *grid;
  require_grid(g, u);
  const Field up = pointwise_max(u, Field::zeros(grid, u.dirichlet()));
  return dirichlet_energy(g, u) -
         lambda * spec.q * weighted_power_integral(g, spec.potentials.k, up, spec.q + 1.0) -
         spec.p * weighted_power_integral(g, spec.potentials.h, up, spec.p + 1.0);
}

StabilitySlack semistability_slack(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                                   const Field& u) {
  const Grid& g = *grid;
  require_grid(g, u);
  if (!u.dirichlet()) throw InvalidArgument("semistability_slack: u must be Dirichlet");
  constexpr double kFloor = 1e-8;
  const Field up = pointwise_max(u, Field::zeros(grid, true));
  std::vector<double> c(g.size(), 0.0);
  for (std::size_t n : g.interior_nodes())
    c[n] = lambda * spec.q * spec.potentials.k[n] * std::pow(std::max(u[n], kFloor), spec.q - 1.0) +
           spec.p * spec.potentials.h[n] * pos_pow(u[n], spec.p - 1.0);
  const EigenPair ep = smallest_eigenvalue_shifted(grid, Field(grid, std::move(c), false), 1e-8);
  const double kq = weighted_power_integral(g, spec.potentials.k, up, spec.q + 1.0);
  const double hp = weighted_power_integral(g, spec.potentials.h, up, spec.p + 1.0);
  return {stability_integral_slack(grid, spec, lambda, u), ep.eigenvalue,
          lambda * (1.0 - spec.q) * kq - (spec.p - 1.0) * hp};
}

double lambda_prime(double lambda1, double m, double q, double p) {
  if (!(lambda1 > 0.0 && m > 0.0)) throw InvalidArgument("lambda_prime: inputs must be positive");
  if (!(q > 0.0 && q < 1.0 && p > 1.0)) throw InvalidSpec("exponents must satisfy 0 < q < 1 < p");
  const double ratio = lambda1 / m;
  const double t = std::pow(ratio * (1.0 - q) / (p - q), 1.0 / (p - 1.0));
  const double peak = ratio * std::pow(t, 1.0 - q) - std::pow(t, p - q);
  return peak * (1.0 + 1e-12);
}

SolveReport minimal_solution(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                             const IterationOptions& options, const WeakFormTests* tests) {
  validate(spec, *grid);
  check_lambda_positive(lambda, "minimal_solution");
  const Field w = solve_concave(grid, lambda, spec.potentials.k, spec.q, options.tol);
  SolveReport report = monotone_iterate(grid, spec, lambda, w, options);
  if (report.diverged) return report;
  report.energy = energy_plus(grid, spec, lambda, report.solution);
  report.stability_slack = stability_integral_slack(grid, spec, lambda, report.solution);
  if (tests != nullptr && tests->grid() && *tests->grid() == *grid) {
    report.weak_residual = tests->residual(spec, lambda, report.solution);
  } else {
    report.weak_residual = WeakFormTests(grid).residual(spec, lambda, report.solution);
  }
  return report;
}

DiagramRecord to_record(const SolveReport& r) {
  DiagramRecord d;
  d.lambda = r.lambda;
  d.sup_norm = r.sup_norm;
  d.h1_norm = r.h1_norm;
  d.energy = r.energy;
  d.stability_slack = r.stability_slack;
  d.iterations = r.iterations;
  d.converged = r.converged;
  return d;
}

namespace {

// Existence probe used by bisection: converged iteration from w.
SolveReport probe_plus(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                       const IterationOptions& options) {
  const Field w = solve_concave(grid, lambda, spec.potentials.k, spec.q, options.tol);
  SolveReport r = monotone_iterate(grid, spec, lambda, w, options);
  if (r.converged) {
    r.energy = energy_plus(grid, spec, lambda, r.solution);
    r.stability_slack = stability_integral_slack(grid, spec, lambda, r.solution);
  }
  return r;
}

}  // namespace

LambdaStarEstimate estimate_lambda_star_plus(const GridPtr& grid, const ProblemSpec& spec,
                                             double tol_lambda, const IterationOptions& options) {
  validate(spec, *grid);
  if (!(tol_lambda > 0.0)) throw InvalidArgument("tol_lambda must be positive");
  const Field v = torsion_function(grid, options.linear_tol);
  const SuperSolutionConstants c = supersolution_constants(spec, norm_sup(v));
  const EigenPair phi = principal_eigenpair(grid, 1e-10);
  const double upper_bound = lambda_prime(phi.eigenvalue, spec.potentials.m, spec.q, spec.p);

  LambdaStarEstimate est{c.lambda0, upper_bound, {}, c.lambda0, upper_bound, 0.0};
  const auto record = [&](const SolveReport& r) { est.diagram.insert(to_record(r)); };

  const SolveReport at_low = probe_plus(grid, spec, c.lambda0, options);
  record(at_low);
  if (!at_low.converged)
    throw BracketInvalid("monotone iteration fails at lambda0 = " + std::to_string(c.lambda0));
  const SolveReport at_high = probe_plus(grid, spec, upper_bound, options);
  record(at_high);
  if (at_high.converged)
    throw BracketInvalid("monotone iteration converges at lambda' = " +
                         std::to_string(upper_bound));

  double lo = c.lambda0, hi = upper_bound;
  while (hi - lo > tol_lambda) {
    const double mid = 0.5 * (lo + hi);
    const SolveReport r = probe_plus(grid, spec, mid, options);
    record(r);
    (r.converged ? lo : hi) = mid;
  }
  est.lower = lo;
  est.upper = hi;
  est.diagram.lambda_star_bracket = std::make_pair(lo, hi);
  return est;
}

BifurcationDiagram sweep_branch_plus(const GridPtr& grid, const ProblemSpec& spec,
                                     const std::vector<double>& lambdas,
                                     const IterationOptions& options, unsigned jobs) {
  validate(spec, *grid);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw InvalidArgument("sweep lambdas must be positive");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1]))
      throw InvalidArgument("sweep lambdas must be strictly increasing");
  }
  BifurcationDiagram diagram;
  if (lambdas.empty()) return diagram;
  const WeakFormTests tests(grid);
  auto records = detail::parallel_map<DiagramRecord>(
      lambdas.size(), jobs, [&](std::size_t i) {
        try {
          return to_record(minimal_solution(grid, spec, lambdas[i], options, &tests));
        } catch (const NoConvergence&) {
          DiagramRecord r;
          r.lambda = lambdas[i];
          return r;
        }
      });
  for (auto& r : records) diagram.insert(std::move(r));
  return diagram;
}

}  // namespace lef
