#include <gtest/gtest.h>

#include <cmath>

#include "lef/branch_minus.hpp"
#include "lef/error.hpp"
#include "lef/quadrature.hpp"
#include "lef/random_fields.hpp"
#include "oracles.hpp"

using namespace lef;
using lef::testing::golden_argmin;
using lef::testing::relative_error;

namespace {

struct MinusFixture : ::testing::Test {
  GridPtr grid = build_interval(201);
  ProblemSpec spec = make_problem(0.5, 3.0, Variant::Minus, unit_potentials(grid), *grid);
  MinimizeOptions opts;
};

double constraint_value(const Grid& g, const ProblemSpec& spec, const Field& v) {
  double s = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n)
    s += g.quadrature_weight(n) * spec.potentials.k[n] * std::pow(std::abs(v[n]), spec.q + 1.0);
  return s / (spec.q + 1.0);
}

}  // namespace

TEST_F(MinusFixture, EnergyBasics) {
  EXPECT_EQ(energy_minus(grid, spec, 2.0, Field::zeros(grid)), 0.0);
  for (const Field& u : random_dirichlet_fields(grid, 5, 3)) {
    EXPECT_GT(energy_minus(grid, spec, 0.0, u), 0.0);
    EXPECT_EQ(energy_minus(grid, spec, 3.0, u), energy_minus(grid, spec, 3.0, (-1.0) * u));
  }
}

TEST(GradEnergyMinus, CentralDifferences) {
  for (const auto& grid : {build_interval(65), build_rectangle(17, 13)}) {
    const auto potentials = pair_stats(
        Field::sample(grid, [](double x, double y) { return 1.0 + x + 0.5 * y; }, false),
        Field::sample(grid, [](double x, double) { return 2.0 - x; }, false));
    const ProblemSpec spec = make_problem(0.4, 2.5, Variant::Minus, potentials, *grid);
    const auto fields = random_dirichlet_fields(grid, 40, 99);
    for (std::size_t i = 0; i < 20; ++i) {
      const Field& u = fields[2 * i];
      const Field& d = fields[2 * i + 1];
      const double eps = 1e-6, lambda = 3.0;
      const double fd = (energy_minus(grid, spec, lambda, u + eps * d) -
                         energy_minus(grid, spec, lambda, u - eps * d)) / (2 * eps);
      const Field g = grad_energy_minus(grid, spec, lambda, u);
      double an = 0.0;
      for (std::size_t n = 0; n < grid->size(); ++n) an += g[n] * d[n];
      EXPECT_LE(std::abs(fd - an) / std::abs(an), 1e-5);
    }
  }
}

TEST_F(MinusFixture, GradientAtZeroVanishes) {
  EXPECT_EQ(norm_sup(grad_energy_minus(grid, spec, 5.0, Field::zeros(grid))), 0.0);
}

TEST(Coercivity, MinimumMatchesGoldenSection) {
  const auto m = coercivity_minimum(1.0, 1.0, 0.5, 3.0);
  EXPECT_NEAR(m.t_min, std::pow(0.375, 0.4), 1e-15);
  EXPECT_NEAR(m.m_min, std::pow(m.t_min, 4.0) - std::pow(m.t_min, 1.5), 1e-15);
  const auto f = [](long double t) { return std::pow(t, 4.0L) - std::pow(t, 1.5L); };
  const long double t = golden_argmin(f, 0.0L, 5.0L);
  EXPECT_LE(relative_error(m.t_min, (double)t), 1e-8);
  EXPECT_LE(relative_error(m.m_min, (double)f(t)), 1e-8);
  EXPECT_LT(m.m_min, 0.0);
}

TEST_F(MinusFixture, CoercivityParamsScaleWithLambda) {
  const auto probes = coercivity_probe_fields(grid, spec.q);
  ASSERT_EQ(probes.size(), 200u);
  const auto e = embedding_factors(grid, spec.q, spec.p, probes);
  const auto a = coercivity_params(spec, 1.5, e);
  const auto b = coercivity_params(spec, 3.0, e);
  EXPECT_DOUBLE_EQ(b.C1, 2 * a.C1);
  EXPECT_DOUBLE_EQ(b.C2, a.C2);
  EXPECT_LT(a.m_min, 0.0);
  EXPECT_LT(b.m_min, 0.0);
  EXPECT_DOUBLE_EQ(a.C2, 0.25);
}

TEST_F(MinusFixture, CoercivityFloorOnProbeSet) {
  const auto probes = coercivity_probe_fields(grid, spec.q);
  const auto e = embedding_factors(grid, spec.q, spec.p, probes);
  for (double lambda : {0.5, 4.0, 20.0}) {
    const auto c = coercivity_params(spec, lambda, e);
    for (const Field& f : probes)
      for (double scale : {1e-3, 0.1, 1.0, 10.0}) {
        const Field u = scale * f;
        EXPECT_GE(energy_minus(grid, spec, lambda, u) - 0.5 * dirichlet_energy(*grid, u) - c.m_min, -1e-8);
      }
  }
}

TEST_F(MinusFixture, MinimizeAtZeroLambda) {
  const SolveReport r = minimize_free(grid, spec, 0.0, opts);
  EXPECT_TRUE(r.trivial);
  EXPECT_EQ(r.energy, 0.0);
  EXPECT_TRUE(r.converged);
}

TEST_F(MinusFixture, MinimizerAboveCapitalLambda) {
  const auto cap = capital_lambda(grid, spec, opts);
  const double lambda = cap.value + 1.0;
  const SolveReport r = minimize_free(grid, spec, lambda, opts);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.energy, cap.value - lambda + 1e-6);
  EXPECT_LE(r.max_energy_rise, 0.0);
  EXPECT_GE(min_value(r.solution), 0.0);
  EXPECT_FALSE(r.dead_core);
  EXPECT_LE(r.weak_residual, 1e-8);
  EXPECT_LE(norm_sup(grad_energy_minus(grid, spec, lambda, r.solution)), opts.gradient_tol);
  const auto c = coercivity_params(grid, spec, lambda);
  EXPECT_GE(r.energy, 0.5 * r.h1_norm * r.h1_norm + c.m_min - 1e-8);
}

TEST_F(MinusFixture, MinimizeIsDeterministicAndSeedSensitive) {
  const SolveReport a = minimize_free(grid, spec, 4.0, opts);
  const SolveReport b = minimize_free(grid, spec, 4.0, opts);
  EXPECT_EQ(a.energy, b.energy);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(ConstraintScale, Examples) {
  const auto g = build_interval(51);
  const Field k = Field::constant(g, 1.0);
  const Field v = Field::sample(g, [](double x, double) { return std::sin(3.14159 * x); }, true);
  const double s = constraint_scale(*g, k, 0.5, v);
  EXPECT_NEAR(constraint_scale(*g, k, 0.5, 2.0 * v), s / 2, 1e-14);
  EXPECT_NEAR(constraint_scale(*g, k, 0.5, s * v), 1.0, 1e-14);
  EXPECT_THROW(constraint_scale(*g, k, 0.5, Field::zeros(g)), ZeroField);
}

TEST_F(MinusFixture, CapitalLambdaConstraintAndRestartConsistency) {
  const auto cap = capital_lambda(grid, spec, opts);
  EXPECT_TRUE(cap.converged);
  EXPECT_NEAR(constraint_value(*grid, spec, cap.minimizer), 1.0, 1e-10);
  MinimizeOptions a = opts, b = opts;
  a.deterministic_starts = b.deterministic_starts = false;
  a.seed = 1001;
  b.seed = 2002;
  const double la = capital_lambda(grid, spec, a).value;
  const double lb = capital_lambda(grid, spec, b).value;
  EXPECT_LE(relative_error(la, lb), 1e-4);
  EXPECT_LE(relative_error(la, cap.value), 1e-4);
}

TEST_F(MinusFixture, ObstacleProblem) {
  const double lambda_a = 6.0, lambda = 9.0;
  const SolveReport lower = minimize_free(grid, spec, lambda_a, opts);
  const SolveReport raised = obstacle_minimize(grid, spec, lambda, lower.solution, opts);
  EXPECT_GE(min_value(raised.solution - lower.solution), 0.0);
  EXPECT_LE(raised.energy, energy_minus(grid, spec, lambda, lower.solution));
  const SolveReport free = minimize_free(grid, spec, lambda, opts);
  const SolveReport zero = obstacle_minimize(grid, spec, lambda, Field::zeros(grid), opts);
  EXPECT_NEAR(zero.energy, free.energy, 1e-8);
  EXPECT_THROW(obstacle_minimize(grid, spec, lambda, (-1.0) * lower.solution, opts), InvalidArgument);
}

TEST_F(MinusFixture, LambdaStarBracket) {
  const auto est = estimate_lambda_star_minus(grid, spec, 1e-3, opts);
  EXPECT_LE(est.upper, est.capital_lambda);
  EXPECT_LE(est.upper - est.lower, 1e-3);
  EXPECT_GE(est.capital_lambda, est.midpoint() - 1e-3);
  const SolveReport above = minimize_free(grid, spec, est.upper + 1e-2, opts);
  EXPECT_TRUE(classify_nontrivial(above, {}));
  EXPECT_LT(above.energy, 0.0);
  bool seen = false;
  for (const auto& r : est.diagram.records) {
    ASSERT_TRUE(r.classified_nontrivial.has_value());
    if (*r.classified_nontrivial) seen = true;
    else EXPECT_FALSE(seen) << "trivial classification above a nontrivial one at " << r.lambda;
  }
}

TEST_F(MinusFixture, SweepIsUpSet) {
  std::vector<double> lambdas;
  for (int i = 0; i <= 10; ++i) lambdas.push_back(0.02 * i);
  const auto d = sweep_branch_minus(grid, spec, lambdas, opts, {}, 4);
  bool seen = false;
  for (const auto& r : d.records) {
    if (*r.classified_nontrivial) seen = true;
    else EXPECT_FALSE(seen);
  }
  EXPECT_TRUE(seen);
  EXPECT_FALSE(*d.records.front().classified_nontrivial);
}

TEST_F(MinusFixture, ScalingProbe) {
  const auto fields = random_dirichlet_fields(grid, 6, 31);
  for (double lambda : {0.01, 0.1, 1.0}) {
    for (const Field& v : fields) {
      double t = 1.0;
      int halvings = 0;
      while (energy_minus(grid, spec, lambda, t * v) >= 0.0 && halvings < 200) {
        t *= 0.5;
        ++halvings;
      }
      EXPECT_LT(energy_minus(grid, spec, lambda, t * v), 0.0) << "lambda " << lambda;
    }
  }
}

TEST(MinimizeOptions, Validation) {
  MinimizeOptions o;
  EXPECT_NO_THROW(validate(o));
  o.shrink = 1.0;
  EXPECT_THROW(validate(o), InvalidArgument);
  o = {};
  o.sufficient_decrease = 0.0;
  EXPECT_THROW(validate(o), InvalidArgument);
  o = {};
  o.restarts = 0;
  EXPECT_THROW(validate(o), InvalidArgument);
}
