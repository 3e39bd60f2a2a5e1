#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lef/branch_minus.hpp"
#include "lef/branch_plus.hpp"
#include "lef/error.hpp"
#include "lef/quadrature.hpp"
#include "lef/shooting.hpp"

using namespace lef;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Shoot, LinearEigenCase) {
  for (double s : {0.1, 1.0, 7.0}) {
    const auto r = shoot([](double u) { return kPi * kPi * u; }, s, 2000);
    EXPECT_NEAR(r.terminal, 0.0, 1e-8 * std::max(1.0, s));
  }
}

TEST(Shoot, ConstantRightHandSide) {
  const auto r = shoot([](double) { return 1.0; }, 0.5, 1000);
  for (std::size_t i = 0; i < r.profile.size(); ++i) {
    const double x = static_cast<double>(i) / 1000.0;
    EXPECT_NEAR(r.profile[i], 0.5 * x * (1 - x), 1e-10);
  }
  EXPECT_NEAR(r.terminal, 0.0, 1e-10);
  EXPECT_EQ(r.profile.front(), 0.0);
  EXPECT_NEAR(r.profile[1] * 1000.0, 0.5, 1e-3);
}

TEST(Shoot, FourthOrder) {
  const auto f = [](double u) { return kPi * kPi * u; };
  // terminal is u(1) = sin(π)/π * s = 0 exactly; errors shrink like h^4.
  const double e1 = std::abs(shoot(f, 1.0, 1000).terminal);
  const double e2 = std::abs(shoot(f, 1.0, 2000).terminal);
  const double order = std::log2(e1 / e2);
  EXPECT_GE(order, 3.7);
  EXPECT_NEAR(e1 / e2, 16.0, 2.0);
}

TEST(Shoot, CrossingContinuesLinearly) {
  const auto r = shoot(1.0, 0.5, 3.0, Variant::Plus, 1e-3, 4000);
  EXPECT_TRUE(r.crossed_zero);
  EXPECT_LT(r.terminal, 0.0);
  EXPECT_NEAR(r.terminal, r.profile.back(), 1e-15);
}

TEST(Shoot, BlowUpIsPositive) {
  const auto r = shoot(1.0, 0.5, 3.0, Variant::Minus, 1e3, 4000);
  EXPECT_TRUE(r.blew_up);
  EXPECT_GT(r.terminal, 0.0);
}

TEST(Shoot, Preconditions) {
  EXPECT_THROW(shoot(1.0, 0.5, 3.0, Variant::Plus, 0.0, 4000), InvalidArgument);
  EXPECT_THROW(shoot(1.0, 0.5, 3.0, Variant::Plus, 1.0, 999), InvalidArgument);
}

TEST(SolutionCount, EmptyGrid) {
  EXPECT_TRUE(solution_count(1.0, 0.5, 3.0, Variant::Plus, {}, 4000).empty());
}

TEST(SolutionCount, NoRootsFarAboveThreshold) {
  const auto g = build_interval(201);
  const double lp = lambda_prime(principal_eigenpair(g, 1e-10).eigenvalue, 1.0, 0.5, 3.0);
  EXPECT_TRUE(solution_count(2 * lp, 0.5, 3.0, Variant::Plus, default_slope_grid(), 4000).empty());
}

TEST(SolutionCount, SmallLambdaMatchesMinimalSolution) {
  const auto g = build_interval(401);
  const ProblemSpec spec = make_problem(0.5, 3.0, Variant::Plus, unit_potentials(g), *g);
  const double lambda = 2.0;
  const auto roots = solution_count(lambda, 0.5, 3.0, Variant::Plus, default_slope_grid(), 4000);
  ASSERT_GE(roots.size(), 1u);
  const Field ode = profile_on_grid(shoot(lambda, 0.5, 3.0, Variant::Plus, roots.front(), 4000), g);
  const SolveReport pde = minimal_solution(g, spec, lambda, IterationOptions{});
  EXPECT_LE(norm_sup(pde.solution - ode) / norm_sup(ode), 1e-2);
  const WeakFormTests tests(g);
  for (double s : roots) {
    const Field f = profile_on_grid(shoot(lambda, 0.5, 3.0, Variant::Plus, s, 4000), g);
    EXPECT_LE(tests.residual(spec, lambda, f), 1e-4);
  }
}

TEST(SolutionCount, RootsAreSortedAndZeros) {
  const auto roots = solution_count(5.0, 0.5, 3.0, Variant::Plus, default_slope_grid(), 4000);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_TRUE(std::is_sorted(roots.begin(), roots.end()));
  for (double s : roots) EXPECT_NEAR(shoot(5.0, 0.5, 3.0, Variant::Plus, s, 4000).terminal, 0.0, 1e-7);
}

TEST(SolutionCount, FindsNearFoldPair) {
  // Slightly below the threshold the positive window in s is narrower than
  // the grid spacing; golden-section refinement still finds both roots.
  const auto [lo, hi] = oracle_lambda_star(0.5, 3.0, Variant::Plus, 1e-6, default_slope_grid(), 4000);
  const auto coarse = log_slope_grid(1e-3, 1e3, 16);
  const auto roots = solution_count(lo, 0.5, 3.0, Variant::Plus, coarse, 4000);
  EXPECT_EQ(roots.size(), 2u);
  EXPECT_TRUE(solution_count(hi + 1e-3, 0.5, 3.0, Variant::Plus, coarse, 4000).empty());
}

TEST(OracleLambdaStar, PlusAgreesWithPde) {
  const auto g = build_interval(201);
  const ProblemSpec spec = make_problem(0.5, 3.0, Variant::Plus, unit_potentials(g), *g);
  const auto est = estimate_lambda_star_plus(g, spec, 1e-3, IterationOptions{});
  const auto [lo, hi] = oracle_lambda_star(0.5, 3.0, Variant::Plus, 1e-3, default_slope_grid(), 4000);
  EXPECT_LE(hi - lo, 1e-3);
  EXPECT_LE(std::abs(est.midpoint() - 0.5 * (lo + hi)) / (0.5 * (lo + hi)), 1e-2);
}

TEST(OracleLambdaStar, BracketsNest) {
  const auto coarse = oracle_lambda_star(0.5, 3.0, Variant::Plus, 1e-1, default_slope_grid(), 4000);
  const auto fine = oracle_lambda_star(0.5, 3.0, Variant::Plus, 1e-2, default_slope_grid(), 4000);
  EXPECT_GE(fine.first, coarse.first);
  EXPECT_LE(fine.second, coarse.second);
}

TEST(OracleLambdaStar, MinusAgreesWithPdeThreshold) {
  const auto g = build_interval(201);
  const ProblemSpec spec = make_problem(0.5, 3.0, Variant::Minus, unit_potentials(g), *g);
  const auto est = estimate_lambda_star_minus(g, spec, 1e-3, MinimizeOptions{});
  OracleOptions oo;
  oo.lambda_hi = 1e2;
  const auto [lo, hi] = oracle_lambda_star(0.5, 3.0, Variant::Minus, 1e-3, log_slope_grid(1e-6, 1e2, 64), 4000, oo);
  EXPECT_LE(std::abs(est.midpoint() - 0.5 * (lo + hi)) / (0.5 * (lo + hi)), 5e-2);
}

TEST(OracleLambdaStar, InvalidRange) {
  OracleOptions oo;
  oo.lambda_lo = 20.0;
  oo.lambda_hi = 30.0;
  EXPECT_THROW(oracle_lambda_star(0.5, 3.0, Variant::Plus, 1e-3, default_slope_grid(), 4000, oo), BracketInvalid);
}

TEST(OracleDiagram, RecordsRootCounts) {
  const auto d = oracle_diagram(0.5, 3.0, Variant::Plus, {1.0, 5.0, 20.0}, default_slope_grid(), 4000);
  ASSERT_EQ(d.records.size(), 3u);
  EXPECT_EQ(d.records[0].iterations, 2u);
  EXPECT_TRUE(d.records[1].converged);
  EXPECT_FALSE(d.records[2].converged);
  EXPECT_LT(d.records[0].sup_norm, d.records[1].sup_norm);
  EXPECT_LT(d.records[1].energy, 0.0);
}
