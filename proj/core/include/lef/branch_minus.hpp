#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lef/branch_plus.hpp"
#include "lef/grid.hpp"
#include "lef/problem.hpp"

namespace lef {

/// Settings for the projected descent used by every minimization here.
struct MinimizeOptions {
  double initial_step = 1.0;
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
  /// Convergence once the projected nodal gradient has sup norm <= this.
  double gradient_tol = 1e-10;
  std::size_t max_iter = 3000;
  /// Number of seeded random starts (the deterministic starts come on top).
  std::size_t restarts = 3;
  std::uint64_t seed = 42;
  /// Include the zero field, a small multiple of φ1 (free/obstacle) or φ1
  /// and v (constrained problem) among the starts.
  bool deterministic_starts = true;
  double linear_tol = 1e-10;
};

/// Throws InvalidArgument unless shrink and sufficient_decrease lie in
/// (0,1) and restarts >= 1.
void validate(const MinimizeOptions& options);

/// ½∫|∇u|² - λ/(q+1)∫k|u|^{q+1} + 1/(p+1)∫h|u|^{p+1}.
double energy_minus(const GridPtr& grid, const ProblemSpec& spec, double lambda, const Field& u);

/// Nodal gradient of energy_minus: cell measure times
/// (-Δ_h u - λ k |u|^{q-1}u + h |u|^{p-1}u) at interior nodes, 0 elsewhere.
Field grad_energy_minus(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                        const Field& u);

struct CoercivityMinimum {
  double t_min;
  double m_min;
};

/// Minimum of t -> A t^{p+1} - B t^{q+1} on t > 0.
CoercivityMinimum coercivity_minimum(double A, double B, double q, double p);

/// Discrete embedding ratios over a probe set: the largest observed
/// ||u||_{q+1}/||∇u|| and the smallest observed ||u||_{p+1}/||∇u||.
struct EmbeddingFactors {
  double upper_q;
  double lower_p;
};

/// 200 probe fields by default: φ1, v, the unit concave solution, the
/// highest grid mode, then seeded smooth and nodal random fields.
std::vector<Field> coercivity_probe_fields(const GridPtr& grid, double q, std::size_t count = 200,
                                           std::uint64_t seed = 7);
EmbeddingFactors embedding_factors(const GridPtr& grid, double q, double p,
                                   const std::vector<Field>& probes);

/// Constants of the lower bound F_λ(u) >= ½||∇u||² + m_min.
///
/// C1 = λ sup k/(q+1) and C2 = min h/(p+1); with the probe-set embedding
/// ratios e_q, e_p the bound reads ½t² + A t^{p+1} - B t^{q+1}, t = ||∇u||,
/// A = C2 e_p^{p+1}, B = C1 e_q^{q+1}. m_min is a probe-set floor, not a
/// proven constant.
struct CoercivityParams {
  double C1;
  double C2;
  double A;
  double B;
  double t_min;
  double m_min;
  EmbeddingFactors embedding;
};

CoercivityParams coercivity_params(const GridPtr& grid, const ProblemSpec& spec, double lambda);
CoercivityParams coercivity_params(const ProblemSpec& spec, double lambda,
                                   const EmbeddingFactors& embedding);

/// Global minimization of F_λ by restarted projected descent; the iterate is
/// replaced by its absolute value after each step. Returns the lowest-energy
/// result (ties go to the earliest start).
SolveReport minimize_free(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                          const MinimizeOptions& options);

/// s > 0 with (1/(q+1))∫k|s v|^{q+1} = 1. Throws ZeroField.
double constraint_scale(const Grid& grid, const Field& k, double q, const Field& v);

struct ConstrainedMinimum {
  /// inf of ½∫|∇v|² + 1/(p+1)∫h|v|^{p+1} over (1/(q+1))∫k|v|^{q+1} = 1.
  double value;
  Field minimizer;
  std::size_t iterations;
  bool converged;
  double stationarity;
};

/// Λ by tangent descent with exact radial rescaling onto the constraint.
ConstrainedMinimum capital_lambda(const GridPtr& grid, const ProblemSpec& spec,
                                  const MinimizeOptions& options);

/// inf F_λ over v >= obstacle, by descent with projection onto the obstacle.
SolveReport obstacle_minimize(const GridPtr& grid, const ProblemSpec& spec, double lambda,
                              const Field& obstacle, const MinimizeOptions& options);

/// Numeric floors that decide whether a minimizer counts as nontrivial.
struct NontrivialFloors {
  double nontrivial_floor = 1e-4;  ///< on the sup norm
  double energy_floor = 1e-10;     ///< energy must be below -energy_floor
};

bool classify_nontrivial(const SolveReport& report, const NontrivialFloors& floors);

/// Bisection for the threshold above which minimize_free classifies as
/// nontrivial, descending from Λ. Throws BracketInvalid if λ = Λ + 1 is
/// classified trivial.
LambdaStarEstimate estimate_lambda_star_minus(const GridPtr& grid, const ProblemSpec& spec,
                                              double tol_lambda, const MinimizeOptions& options,
                                              const NontrivialFloors& floors = {});

/// minimize_free at each λ with its classification in the diagram.
BifurcationDiagram sweep_branch_minus(const GridPtr& grid, const ProblemSpec& spec,
                                      const std::vector<double>& lambdas,
                                      const MinimizeOptions& options,
                                      const NontrivialFloors& floors = {}, unsigned jobs = 1);

}  // namespace lef
