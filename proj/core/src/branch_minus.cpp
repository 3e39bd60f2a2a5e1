#include "lef/branch_minus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lef/error.hpp"
#include "lef/laplacian.hpp"
#include "lef/quadrature.hpp"
#include "lef/random_fields.hpp"
#include "parallel.hpp"

namespace lef {

namespace {

using Vec = std::vector<double>;

double weighted_power_integral(const Grid& g, const Field& w, std::span<const double> u, double r) {
  double s = 0.0;
  for (std::size_t n = 0; n < u.size(); ++n)
    s += g.quadrature_weight(n) * w[n] * std::pow(std::abs(u[n]), r);
  return s;
}

// |a|^r - |b|^r without cancellation when a and b are close.
double power_difference(double a, double b, double r) {
  a = std::abs(a);
  b = std::abs(b);
  if (b == 0.0) return std::pow(a, r);
  if (a == 0.0) return -std::pow(b, r);
  return std::pow(b, r) * std::expm1(r * std::log1p((a - b) / b));
}

// ∫w(|a|^r - |b|^r)
double weighted_power_difference(const Grid& g, const Field& w, const Vec& a, const Vec& b,
                                 double r) {
  double s = 0.0;
  for (std::size_t n : g.interior_nodes())
    s += g.quadrature_weight(n) * w[n] * power_difference(a[n], b[n], r);
  return s;
}

// ½(E(a) - E(b)) = ½ h_x h_y <a - b, -Δ_h (a + b)>
double half_dirichlet_difference(const Grid& g, const Vec& a, const Vec& b) {
  Vec d(g.size(), 0.0), s(g.size(), 0.0), As(g.size(), 0.0);
  for (std::size_t n : g.interior_nodes()) {
    d[n] = a[n] - b[n];
    s[n] = a[n] + b[n];
  }
  linalg::apply_operator(g, s, {}, As);
  double acc = 0.0;
  for (std::size_t n : g.interior_nodes()) acc += d[n] * As[n];
  return 0.5 * g.cell_measure() * acc;
}

double sup_interior(const Grid& g, std::span<const double> v) {
  double m = 0.0;
  for (std::size_t n : g.interior_nodes()) m = std::max(m, std::abs(v[n]));
  return m;
}

// Riesz representative in the discrete H1_0 inner product: solves
// -Δ_h r = grad / cell.
void riesz(const Grid& g, const Vec& grad, double rel_tol, Vec& r) {
  Vec b(g.size(), 0.0);
  for (std::size_t n : g.interior_nodes()) b[n] = grad[n] / g.cell_measure();
  linalg::CgOptions cg;
  cg.abs_tol = rel_tol * sup_interior(g, b);
  cg.accept_rounding_floor = true;
  linalg::conjugate_gradient(g, b, {}, r, cg);
}

double dot_interior(const Grid& g, const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t n : g.interior_nodes()) s += a[n] * b[n];
  return s;
}

ProblemSpec as_minus(const ProblemSpec& spec) {
  ProblemSpec s = spec;
  s.variant = Variant::Minus;
  return s;
}

struct MinusFunctional {
  const Grid& g;
  const ProblemSpec& spec;
  double lambda;

  double energy(const Vec& u) const {
    Vec zero(g.size(), 0.0);
    return difference(u, zero);
  }
  double difference(const Vec& a, const Vec& b) const {
    return half_dirichlet_difference(g, a, b) -
           lambda / (spec.q + 1.0) *
               weighted_power_difference(g, spec.potentials.k, a, b, spec.q + 1.0) +
           1.0 / (spec.p + 1.0) *
               weighted_power_difference(g, spec.potentials.h, a, b, spec.p + 1.0);
  }
  void gradient(const Vec& u, Vec& out) const {
    linalg::apply_operator(g, u, {}, out);
    const double cell = g.cell_measure();
    for (std::size_t n = 0; n < g.size(); ++n) {
      if (!g.is_interior(n)) {
        out[n] = 0.0;
        continue;
      }
      out[n] = cell * (out[n] - lambda * spec.potentials.k[n] * signed_pow(u[n], spec.q) +
                       spec.potentials.h[n] * signed_pow(u[n], spec.p));
    }
  }
};

struct DescentOutcome {
  Vec u;
  std::size_t iterations = 0;
  bool converged = false;
  double max_rise = -std::numeric_limits<double>::infinity();
  double stationarity = 0.0;
};

// Projected descent along the H1 Riesz direction with Armijo backtracking
// on the projected arc. `lower` is the pointwise bound the projection
// enforces: empty means projection by absolute value.
DescentOutcome projected_descent(const Grid& g, const MinusFunctional& F, Vec u,
                                 const Vec& lower, const MinimizeOptions& opt) {
  const bool absolute = lower.empty();
  const auto project = [&](Vec& x) {
    for (std::size_t n : g.interior_nodes())
      x[n] = absolute ? std::abs(x[n]) : std::max(x[n], lower[n]);
  };
  const auto bound = [&](std::size_t n) { return absolute ? 0.0 : lower[n]; };
  const auto stationarity = [&](const Vec& x, const Vec& grad) {
    double s = 0.0;
    for (std::size_t n : g.interior_nodes()) {
      const bool pinned = x[n] <= bound(n) && grad[n] > 0.0;
      if (!pinned) s = std::max(s, std::abs(grad[n]));
    }
    return s;
  };
  const double op_norm = linalg::operator_norm_bound(g, {});

  project(u);
  DescentOutcome out;
  Vec grad(g.size(), 0.0), dir(g.size(), 0.0), cand(g.size(), 0.0);
  F.gradient(u, grad);
  out.stationarity = stationarity(u, grad);

  // Armijo search along x(α) = P(u + α d); returns false when no step helps.
  const auto search = [&](const Vec& d) {
    double alpha = opt.initial_step;
    for (int k = 0; k < 60; ++k, alpha *= opt.shrink) {
      for (std::size_t n : g.interior_nodes()) cand[n] = u[n] + alpha * d[n];
      project(cand);
      double model = 0.0;
      for (std::size_t n : g.interior_nodes()) model += grad[n] * (cand[n] - u[n]);
      if (!(model < 0.0)) continue;
      const double change = F.difference(cand, u);
      if (change <= opt.sufficient_decrease * model) {
        out.max_rise = std::max(out.max_rise, change);
        return true;
      }
    }
    return false;
  };

  while (out.iterations < opt.max_iter) {
    if (out.stationarity <= opt.gradient_tol) {
      out.converged = true;
      break;
    }
    riesz(g, grad, opt.linear_tol, dir);
    for (double& x : dir) x = -x;
    bool moved = search(dir);
    if (!moved) {
      for (std::size_t n : g.interior_nodes()) dir[n] = -grad[n] / (g.cell_measure() * op_norm);
      moved = search(dir);
    }
    if (!moved) break;
    u.swap(cand);
    ++out.iterations;
    F.gradient(u, grad);
    out.stationarity = stationarity(u, grad);
  }
  if (out.stationarity <= opt.gradient_tol) out.converged = true;
  out.u = std::move(u);
  return out;
}

// Natural amplitude where the concave and convex terms balance.
double balance_amplitude(const ProblemSpec& spec, double lambda) {
  const double ratio = std::max(lambda, 1e-12) * spec.potentials.sup_k / spec.potentials.min_h;
  return std::pow(ratio, 1.0 / (spec.p - spec.q));
}

std::vector<Vec> descent_starts(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                                const MinimizeOptions& opt) {
  std::vector<Vec> starts;
  if (opt.deterministic_starts) {
    starts.emplace_back(grid->size(), 0.0);
    starts.push_back((1e-3 * principal_eigenpair(grid, 1e-10).eigenfunction).to_vector());
  }
  Rng rng(opt.seed);
  const double amp = balance_amplitude(spec, lambda);
  for (std::size_t r = 0; r < opt.restarts; ++r) {
    const Field f = abs(random_smooth_field(grid, rng, 6));
    const double scale = amp * rng.uniform(0.2, 1.5) / std::max(norm_sup(f), 1e-300);
    starts.push_back((scale * f).to_vector());
  }
  return starts;
}

SolveReport finish_report(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                          const std::vector<DescentOutcome>& runs, const MinusFunctional& F) {
  std::size_t best = 0;
  double best_energy = std::numeric_limits<double>::infinity();
  std::vector<double> energies(runs.size());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    energies[i] = F.energy(runs[i].u);
    if (energies[i] < best_energy) {
      best_energy = energies[i];
      best = i;
    }
  }
  const DescentOutcome& r = runs[best];
  Vec u = r.u;
  for (std::size_t n = 0; n < u.size(); ++n)
    if (!grid->is_interior(n)) u[n] = 0.0;
  SolveReport report{.solution = Field(grid, std::move(u), true), .lambda = lambda};
  const Grid& g = *grid;
  const ProblemSpec minus = as_minus(spec);
  report.converged = r.converged;
  report.iterations = r.iterations;
  report.energy = best_energy;
  report.sup_norm = norm_sup(report.solution);
  report.h1_norm = norm_h1(g, report.solution);
  report.trivial = report.sup_norm == 0.0;
  double rise = -std::numeric_limits<double>::infinity();
  for (const auto& run : runs) rise = std::max(rise, run.max_rise);
  report.max_energy_rise = std::isfinite(rise) ? rise : 0.0;
  report.weak_residual = WeakFormTests(grid).residual(minus, lambda, report.solution);
  const auto& sol = report.solution.values();
  report.stability_slack =
      dirichlet_energy(g, report.solution) -
      lambda * spec.q * weighted_power_integral(g, spec.potentials.k, sol, spec.q + 1.0) +
      spec.p * weighted_power_integral(g, spec.potentials.h, sol, spec.p + 1.0);
  if (!report.trivial)
    report.dead_core = interior_min(report.solution) <= 0.0;
  return report;
}

void check_lambda(double lambda, const char* where) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw InvalidArgument(std::string(where) + ": lambda must be >= 0");
}

}  // namespace

void validate(const MinimizeOptions& o) {
  if (!(o.shrink > 0.0 && o.shrink < 1.0))
    throw InvalidArgument("shrink factor must lie in (0,1)");
  if (!(o.sufficient_decrease > 0.0 && o.sufficient_decrease < 1.0))
    throw InvalidArgument("sufficient-decrease constant must lie in (0,1)");
  if (o.restarts < 1) throw InvalidArgument("restart count must be >= 1");
  if (!(o.initial_step > 0.0)) throw InvalidArgument("initial step must be positive");
  if (!(o.gradient_tol > 0.0)) throw InvalidArgument("gradient tolerance must be positive");
}

double energy_minus(const GridPtr& grid, const ProblemSpec& spec, double lambda, const Field& u) {
  const Grid& g = *grid;
  require_grid(g, u);
  return 0.5 * dirichlet_energy(g, u) -
         lambda / (spec.q + 1.0) *
             weighted_power_integral(g, spec.potentials.k, u.values(), spec.q + 1.0) +
         1.0 / (spec.p + 1.0) *
             weighted_power_integral(g, spec.potentials.h, u.values(), spec.p + 1.0);
}

Field grad_energy_minus(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                        const Field& u) {
  const Grid& g = *grid;
  require_grid(g, u);
  if (!u.dirichlet()) throw InvalidArgument("grad_energy_minus: u must be Dirichlet");
  Vec out(g.size(), 0.0);
  MinusFunctional{g, spec, lambda}.gradient(u.to_vector(), out);
  return Field(grid, std::move(out), true);
}

CoercivityMinimum coercivity_minimum(double A, double B, double q, double p) {
  if (!(A > 0.0 && B > 0.0)) throw InvalidArgument("coercivity_minimum needs A, B > 0");
  const double t = std::pow(B * (q + 1.0) / (A * (p + 1.0)), 1.0 / (p - q));
  return {t, A * std::pow(t, p + 1.0) - B * std::pow(t, q + 1.0)};
}

std::vector<Field> coercivity_probe_fields(const GridPtr& grid, double q, std::size_t count,
                                           std::uint64_t seed) {
  std::vector<Field> probes;
  probes.reserve(count);
  const auto push = [&](const Field& f) {
    if (probes.size() < count) probes.push_back((1.0 / norm_sup(f)) * f);
  };
  push(principal_eigenpair(grid, 1e-10).eigenfunction);
  push(torsion_function(grid, 1e-12));
  push(solve_concave(grid, 1.0, Field::constant(grid, 1.0), q, 1e-10));
  const Grid& g = *grid;
  push(Field::sample(
      grid,
      [&](double x, double y) {
        const double i = std::round(x / g.hx()), j = std::round(y / g.hy());
        return (static_cast<long long>(i + j) % 2 == 0) ? 1.0 : -1.0;
      },
      true));
  if (probes.size() < count)
    for (auto& f : random_dirichlet_fields(grid, count - probes.size(), seed))
      probes.push_back(std::move(f));
  return probes;
}

EmbeddingFactors embedding_factors(const GridPtr& grid, double q, double p,
                                   const std::vector<Field>& probes) {
  const Grid& g = *grid;
  EmbeddingFactors e{0.0, std::numeric_limits<double>::infinity()};
  for (const Field& f : probes) {
    const double grad = norm_h1(g, f);
    if (!(grad > 0.0)) continue;
    e.upper_q = std::max(e.upper_q, norm_lp(g, f, q + 1.0) / grad);
    e.lower_p = std::min(e.lower_p, norm_lp(g, f, p + 1.0) / grad);
  }
  if (!(e.upper_q > 0.0) || !std::isfinite(e.lower_p))
    throw InvalidArgument("embedding_factors: no nonzero probe field");
  return e;
}

CoercivityParams coercivity_params(const ProblemSpec& spec, double lambda,
                                   const EmbeddingFactors& e) {
  if (!(lambda > 0.0)) throw InvalidArgument("coercivity_params: lambda must be positive");
  CoercivityParams c{};
  c.C1 = lambda * spec.potentials.sup_k / (spec.q + 1.0);
  c.C2 = spec.potentials.min_h / (spec.p + 1.0);
  c.A = c.C2 * std::pow(e.lower_p, spec.p + 1.0);
  c.B = c.C1 * std::pow(e.upper_q, spec.q + 1.0);
  const CoercivityMinimum m = coercivity_minimum(c.A, c.B, spec.q, spec.p);
  c.t_min = m.t_min;
  c.m_min = m.m_min;
  c.embedding = e;
  return c;
}

CoercivityParams coercivity_params(const GridPtr& grid, const ProblemSpec& spec, double lambda) {
  validate(spec, *grid);
  const auto probes = coercivity_probe_fields(grid, spec.q);
  return coercivity_params(spec, lambda, embedding_factors(grid, spec.q, spec.p, probes));
}

SolveReport minimize_free(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                          const MinimizeOptions& options) {
  validate(spec, *grid);
  validate(options);
  check_lambda(lambda, "minimize_free");
  const Grid& g = *grid;
  const MinusFunctional F{g, spec, lambda};
  const auto starts = descent_starts(grid, spec, lambda, options);
  std::vector<DescentOutcome> runs;
  runs.reserve(starts.size());
  for (const Vec& s : starts) runs.push_back(projected_descent(g, F, s, {}, options));
  return finish_report(grid, spec, lambda, runs, F);
}

double constraint_scale(const Grid& grid, const Field& k, double q, const Field& v) {
  require_grid(grid, k);
  require_grid(grid, v);
  const double integral = weighted_power_integral(grid, k, v.values(), q + 1.0);
  if (!(integral > 0.0)) throw ZeroField("constraint_scale: the constraint integral vanishes");
  return std::pow((q + 1.0) / integral, 1.0 / (q + 1.0));
}

namespace {

struct ConstrainedRun {
  Vec v;
  double value;
  std::size_t iterations;
  bool converged;
  double stationarity;
};

ConstrainedRun constrained_descent(const GridPtr& grid, const ProblemSpec& spec, Vec v,
                                   const MinimizeOptions& opt) {
  const Grid& g = *grid;
  const Field& k = spec.potentials.k;
  const Field& h = spec.potentials.h;
  const double q = spec.q, p = spec.p, cell = g.cell_measure();

  const auto rescale = [&](Vec& x) {
    for (std::size_t n = 0; n < x.size(); ++n) x[n] = g.is_interior(n) ? std::abs(x[n]) : 0.0;
    const double s = std::pow((q + 1.0) / weighted_power_integral(g, k, x, q + 1.0), 1.0 / (q + 1.0));
    for (double& a : x) a *= s;
  };
  const auto difference = [&](const Vec& a, const Vec& b) {
    return half_dirichlet_difference(g, a, b) +
           weighted_power_difference(g, h, a, b, p + 1.0) / (p + 1.0);
  };
  const auto gradients = [&](const Vec& x, Vec& gG, Vec& gK) {
    linalg::apply_operator(g, x, {}, gG);
    for (std::size_t n = 0; n < g.size(); ++n) {
      if (!g.is_interior(n)) {
        gG[n] = gK[n] = 0.0;
        continue;
      }
      gG[n] = cell * (gG[n] + h[n] * signed_pow(x[n], p));
      gK[n] = cell * k[n] * signed_pow(x[n], q);
    }
  };

  rescale(v);
  Vec gG(g.size(), 0.0), gK(g.size(), 0.0), rG(g.size(), 0.0), rK(g.size(), 0.0);
  Vec dir(g.size(), 0.0), cand(g.size(), 0.0);
  ConstrainedRun run{{}, 0.0, 0, false, 0.0};
  const auto update_direction = [&] {
    gradients(v, gG, gK);
    riesz(g, gG, opt.linear_tol, rG);
    riesz(g, gK, opt.linear_tol, rK);
    const double mu = dot_interior(g, gK, rG) / dot_interior(g, gK, rK);
    double s = 0.0;
    for (std::size_t n : g.interior_nodes()) {
      dir[n] = -(rG[n] - mu * rK[n]);
      s = std::max(s, std::abs(gG[n] - mu * gK[n]));
    }
    run.stationarity = s;
  };

  update_direction();
  while (run.iterations < opt.max_iter && run.stationarity > opt.gradient_tol) {
    const double slope = dot_interior(g, gG, dir);
    if (!(slope < 0.0)) break;
    bool moved = false;
    double alpha = opt.initial_step;
    for (int t = 0; t < 60 && !moved; ++t, alpha *= opt.shrink) {
      for (std::size_t n : g.interior_nodes()) cand[n] = v[n] + alpha * dir[n];
      rescale(cand);
      moved = difference(cand, v) <= opt.sufficient_decrease * alpha * slope;
    }
    if (!moved) break;
    v.swap(cand);
    ++run.iterations;
    update_direction();
  }
  run.converged = run.stationarity <= opt.gradient_tol;
  Vec zero(g.size(), 0.0);
  run.value = difference(v, zero);
  run.v = std::move(v);
  return run;
}

}  // namespace

ConstrainedMinimum capital_lambda(const GridPtr& grid, const ProblemSpec& spec,
                                  const MinimizeOptions& options) {
  validate(spec, *grid);
  validate(options);
  std::vector<Vec> starts;
  if (options.deterministic_starts) {
    starts.push_back(principal_eigenpair(grid, 1e-10).eigenfunction.to_vector());
    starts.push_back(torsion_function(grid, 1e-12).to_vector());
  }
  Rng rng(options.seed);
  for (std::size_t r = 0; r < options.restarts; ++r)
    starts.push_back(abs(random_smooth_field(grid, rng, 6)).to_vector());

  std::vector<ConstrainedRun> runs;
  for (Vec& s : starts) runs.push_back(constrained_descent(grid, spec, std::move(s), options));
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].value < runs[best].value) best = i;
  ConstrainedRun& r = runs[best];
  return {r.value, Field(grid, std::move(r.v), true), r.iterations, r.converged, r.stationarity};
}

SolveReport obstacle_minimize(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                              const Field& obstacle, const MinimizeOptions& options) {
  validate(spec, *grid);
  validate(options);
  check_lambda(lambda, "obstacle_minimize");
  require_grid(*grid, obstacle);
  if (!obstacle.dirichlet()) throw InvalidArgument("obstacle must be Dirichlet");
  if (min_value(obstacle) < 0.0) throw InvalidArgument("obstacle must be nonnegative");

  const Grid& g = *grid;
  const MinusFunctional F{g, spec, lambda};
  const Vec lower = obstacle.to_vector();
  auto starts = descent_starts(grid, spec, lambda, options);
  starts.push_back(lower);
  std::vector<DescentOutcome> runs;
  runs.reserve(starts.size());
  for (const Vec& s : starts) runs.push_back(projected_descent(g, F, s, lower, options));
  return finish_report(grid, spec, lambda, runs, F);
}

bool classify_nontrivial(const SolveReport& r, const NontrivialFloors& f) {
  return r.sup_norm > f.nontrivial_floor && r.energy < -f.energy_floor;
}

namespace {

DiagramRecord classified_record(const SolveReport& r, const NontrivialFloors& floors) {
  DiagramRecord d = to_record(r);
  d.classified_nontrivial = classify_nontrivial(r, floors);
  return d;
}

}  // namespace

LambdaStarEstimate estimate_lambda_star_minus(const GridPtr& grid, const ProblemSpec& spec,
                                              double tol_lambda, const MinimizeOptions& options,
                                              const NontrivialFloors& floors) {
  validate(spec, *grid);
  validate(options);
  if (!(tol_lambda > 0.0)) throw InvalidArgument("tol_lambda must be positive");
  const ConstrainedMinimum cap = capital_lambda(grid, spec, options);

  LambdaStarEstimate est{0.0, 0.0, {}, 0.0, 0.0, cap.value};
  const auto probe = [&](double lambda) {
    const SolveReport r = minimize_free(grid, spec, lambda, options);
    const DiagramRecord d = classified_record(r, floors);
    est.diagram.insert(d);
    return *d.classified_nontrivial;
  };

  if (!probe(cap.value + 1.0))
    throw BracketInvalid("minimizer at Lambda + 1 is classified trivial");
  double hi = cap.value + 1.0;
  if (probe(cap.value)) hi = cap.value;
  double lo = 0.5 * hi;
  while (probe(lo)) {
    hi = lo;
    lo *= 0.5;
    if (lo < 1e-12) {
      lo = 0.0;
      break;
    }
  }
  while (hi - lo > tol_lambda) {
    const double mid = 0.5 * (lo + hi);
    (probe(mid) ? hi : lo) = mid;
  }
  est.lower = lo;
  est.upper = hi;
  est.diagram.lambda_star_bracket = std::make_pair(lo, hi);
  return est;
}

BifurcationDiagram sweep_branch_minus(const GridPtr& grid, const ProblemSpec& spec,
                                      const std::vector<double>& lambdas,
                                      const MinimizeOptions& options,
                                      const NontrivialFloors& floors, unsigned jobs) {
  validate(spec, *grid);
  validate(options);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] >= 0.0)) throw InvalidArgument("sweep lambdas must be nonnegative");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1]))
      throw InvalidArgument("sweep lambdas must be strictly increasing");
  }
  BifurcationDiagram diagram;
  auto records = detail::parallel_map<DiagramRecord>(lambdas.size(), jobs, [&](std::size_t i) {
    return classified_record(minimize_free(grid, spec, lambdas[i], options), floors);
  });
  for (auto& r : records) diagram.insert(std::move(r));
  return diagram;
}

}  // namespace lef
