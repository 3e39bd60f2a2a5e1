#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lef/diagram.hpp"
#include "lef/eigen.hpp"
#include "lef/grid.hpp"
#include "lef/problem.hpp"

namespace lef {

/// Controls for fixed-point iterations.
struct IterationOptions {
  /// Stop once the sup norm of the update is <= tol * max(1, ||u||_inf).
  double tol = 1e-10;
  /// Relative residual target for each linear solve.
  double linear_tol = 1e-10;
  std::size_t max_iter = 20000;
  /// Iterates above this sup norm are reported as diverged.
  double norm_cap = 1e6;
};

/// Outcome of a nonlinear solve at one λ.
struct SolveReport {
  Field solution;
  double lambda = 0.0;
  bool converged = false;
  bool diverged = false;
  /// Converged to the zero field.
  bool trivial = false;
  std::size_t iterations = 0;
  double weak_residual = 0.0;
  double energy = 0.0;
  /// ||∇u||^2 minus the second-variation potential term at ψ = u.
  double stability_slack = 0.0;
  double sup_norm = 0.0;
  double h1_norm = 0.0;
  /// Smallest nodal increment u_n - u_{n-1} over all monotone steps.
  double min_increment = 0.0;
  /// Largest energy increase between accepted descent steps (<= 0 when the
  /// sequence is nonincreasing).
  double max_energy_rise = 0.0;
  /// Minimizer vanishes at some interior node.
  bool dead_core = false;
};

/// Unique solution of -Δv = 1, v = 0 on the boundary. The interior residual
/// is at most max(tol, rounding floor of the conjugate-gradient solve).
Field torsion_function(const GridPtr& grid, double tol);

/// Positive solution of -Δw = λ k w^q by the fixed-point map
/// u -> (-Δ_h)^{-1}(λ k u_+^q), seeded with the super-solution
/// (λ sup k sup v^q)^{1/(1-q)} v. Converges once the update is below
/// tol * ||u||_inf. Throws NoConvergence.
Field solve_concave(const GridPtr& grid, double lambda, const Field& k, double q, double tol);
/// Same, from an explicit positive Dirichlet seed.
Field solve_concave(const GridPtr& grid, double lambda, const Field& k, double q, double tol,
                    const Field& seed);

/// Constants of the super-solution M v with M = C λ^{1/(p-q)}.
struct SuperSolutionConstants {
  double A;
  double B;
  double C;
  double lambda0;
  double sup_v;
  double q;
  double p;

  /// M(λ) = C λ^{1/(p-q)}, the minimizer of t -> λ A t^{q-1} + B t^{p-1}.
  double M(double lambda) const;
  /// λ A M^{q-1} + B M^{p-1} at M = M(λ); <= 1 exactly for λ <= λ0.
  double supersolution_ratio(double lambda) const;
};

SuperSolutionConstants supersolution_constants(const ProblemSpec& spec, double sup_v);
SuperSolutionConstants supersolution_constants(double A, double B, double q, double p);

struct SubSuperPair {
  double epsilon;
  Field sub;
  Field super;
};

/// Sub-solution ε w and super-solution M(λ) v with ε the largest power 2^{-j},
/// j >= 1, keeping ε w <= M v nodewise. Requires 0 < λ <= λ0.
/// Throws OrderingFailed below 2^{-40}.
SubSuperPair subsuper_pair(const GridPtr& grid, const ProblemSpec& spec, double lambda, double tol);

/// Iterates u_n = (-Δ_h)^{-1}(λ k u_{n-1,+}^q + h u_{n-1,+}^p) from u0.
///
/// The update is computed in increment form, δ_n = (-Δ_h)^{-1}(g(u_{n-1}) -
/// g(u_{n-2})), which keeps rounding errors proportional to the increment so
/// that ordered iterates stay ordered in floating point. Divergence is a
/// reported state; `solution` then holds the last finite iterate.
SolveReport monotone_iterate(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                             const Field& u0, const IterationOptions& options);

/// Test functions for the discrete weak form: φ1, v, and seeded random
/// fields, all at unit sup norm. Built once per grid and reused.
class WeakFormTests {
 public:
  static constexpr std::uint64_t kDefaultSeed = 0x5eed5eedULL;
  explicit WeakFormTests(const GridPtr& grid, std::uint64_t seed = kDefaultSeed);

  /// max over tests φ (plus u/||u||) of |∫∇u∇φ - ∫(λ k u^q ± h u^p) φ|,
  /// divided by 1 + ||u||_{H1}. The sign follows spec.variant.
  double residual(const ProblemSpec& spec, double lambda, const Field& u) const;

  const GridPtr& grid() const noexcept { return grid_; }
  const Field& torsion() const noexcept { return fields_[1]; }
  const Field& principal() const noexcept { return fields_[0]; }
  double principal_eigenvalue() const noexcept { return lambda1_; }

 private:
  GridPtr grid_;
  double lambda1_;
  std::vector<Field> fields_;
};

double weak_residual(const GridPtr& grid, const ProblemSpec& spec, double lambda, const Field& u,
                     std::uint64_t seed = WeakFormTests::kDefaultSeed);

/// ½∫|∇u|² - λ/(q+1) ∫k|u|^{q+1} - 1/(p+1) ∫h|u|^{p+1}.
double energy_plus(const GridPtr& grid, const ProblemSpec& spec, double lambda, const Field& u);

/// |∫|∇u|² - λ∫k u^{q+1} - ∫h u^{p+1}| / (1 + ∫|∇u|²); zero on solutions.
double energy_identity_residual(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                                const Field& u);

struct StabilitySlack {
  /// ∫|∇u|² - ∫(λ q k u^{q+1} + p h u^{p+1}).
  double integral_slack;
  /// Smallest eigenvalue of -Δ_h - λ q k max(u,δ)^{q-1} - p h u^{p-1}.
  double eigen_margin;
  /// λ(1-q)∫k u^{q+1} - (p-1)∫h u^{p+1}.
  double combined_slack;
};

/// Integral slack only (no eigensolve).
double stability_integral_slack(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                                const Field& u);
StabilitySlack semistability_slack(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                                   const Field& u);

/// Smallest λ' with m(λ' + t^{p-q}) > λ1 t^{1-q} for all t >= 0, from the
/// closed-form maximizer t* = [(λ1/m)(1-q)/(p-q)]^{1/(p-1)} and a relative
/// safety factor of 1e-12.
double lambda_prime(double lambda1, double m, double q, double p);

/// Solves at λ: concave solve for w, then monotone iteration from w, then
/// fills energy, stability slack and weak residual. `tests` may be null.
SolveReport minimal_solution(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                             const IterationOptions& options,
                             const WeakFormTests* tests = nullptr);

DiagramRecord to_record(const SolveReport& report);

struct LambdaStarEstimate {
  double lower;
  double upper;
  BifurcationDiagram diagram;
  /// Analytic bounds known before bisection: λ0 and λ' for the plus
  /// variant, Λ for the minus variant (lambda0 unused there).
  double lambda0 = 0.0;
  double lambda_prime = 0.0;
  double capital_lambda = 0.0;

  double midpoint() const { return 0.5 * (lower + upper); }
};

/// Bisection on [λ0, λ'] where existence at λ means the monotone iteration
/// from w converges. Throws BracketInvalid if λ0 fails or λ' converges.
LambdaStarEstimate estimate_lambda_star_plus(const GridPtr& grid, const ProblemSpec& spec,
                                             double tol_lambda, const IterationOptions& options);

/// minimal_solution at each λ (strictly increasing, positive). Failures are
/// recorded as non-converged rows. Up to `jobs` points run concurrently;
/// output order is by λ.
BifurcationDiagram sweep_branch_plus(const GridPtr& grid, const ProblemSpec& spec,
                                     const std::vector<double>& lambdas,
                                     const IterationOptions& options, unsigned jobs = 1);

}  // namespace lef
