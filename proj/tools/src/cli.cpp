#include "lefcli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "lef/branch_minus.hpp"
#include "lef/branch_plus.hpp"
#include "lef/config.hpp"
#include "lef/diagram.hpp"
#include "lef/error.hpp"
#include "lef/field_io.hpp"
#include "lef/shooting.hpp"
#include "lefcli/check_suite.hpp"

namespace lefcli {

namespace {

using namespace lef;

constexpr int kOk = 0;
constexpr int kSolverFailure = 1;
constexpr int kUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void write_diagram(const std::string& path, const BifurcationDiagram& d, CsvSchema schema) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  write_diagram_csv(f, d, schema);
}

void print_report(std::ostream& out, const SolveReport& r, Variant variant,
                  const NontrivialFloors& nf) {
  out << "lambda = " << num(r.lambda) << '\n'
      << "converged = " << (r.converged ? "yes" : "no") << '\n'
      << "iterations = " << r.iterations << '\n'
      << "sup_norm = " << num(r.sup_norm) << '\n'
      << "h1_norm = " << num(r.h1_norm) << '\n'
      << "energy = " << num(r.energy) << '\n'
      << "stability_slack = " << num(r.stability_slack) << '\n'
      << "weak_residual = " << num(r.weak_residual) << '\n';
  if (variant == Variant::Minus) {
    out << "classified_nontrivial = " << (classify_nontrivial(r, nf) ? "yes" : "no") << '\n'
        << "dead_core = " << (r.dead_core ? "yes" : "no") << '\n';
  }
}

int cmd_solve(const RunConfig& cfg, Variant variant, double lambda, std::string out_path,
              std::ostream& out, std::ostream& err) {
  const RunSetup setup = make_setup(cfg);
  ProblemSpec spec = setup.spec;
  spec.variant = variant;
  if (out_path.empty()) out_path = cfg.field_out;
  SolveReport r{.solution = Field::zeros(setup.grid)};
  if (variant == Variant::Plus) {
    if (!(lambda > 0.0)) throw UsageError("--lambda must be positive for the plus variant");
    r = minimal_solution(setup.grid, spec, lambda, iteration_options(cfg));
    if (r.diverged) {
      err << "diverged (nonexistence regime) at lambda = " << num(lambda) << " after "
          << r.iterations << " iterations\n";
      return kSolverFailure;
    }
  } else {
    if (!(lambda >= 0.0)) throw UsageError("--lambda must be nonnegative");
    r = minimize_free(setup.grid, spec, lambda, minimize_options(cfg));
  }
  print_report(out, r, variant, floors(cfg));
  if (!out_path.empty()) write_field_file(out_path, r.solution);
  if (!r.converged) {
    err << "no convergence within the iteration limit\n";
    return kSolverFailure;
  }
  return kOk;
}

int cmd_lambda_star(const RunConfig& cfg, Variant variant, double tol, std::ostream& out) {
  const RunSetup setup = make_setup(cfg);
  ProblemSpec spec = setup.spec;
  spec.variant = variant;
  if (!(tol > 0.0)) tol = cfg.tol_lambda;
  LambdaStarEstimate est{};
  if (variant == Variant::Plus) {
    est = estimate_lambda_star_plus(setup.grid, spec, tol, iteration_options(cfg));
    out << "lambda0 = " << num(est.lambda0) << '\n'
        << "lambda_star in [" << num(est.lower) << ", " << num(est.upper) << "]\n"
        << "lambda_prime = " << num(est.lambda_prime) << '\n';
  } else {
    const NontrivialFloors nf = floors(cfg);
    est = estimate_lambda_star_minus(setup.grid, spec, tol, minimize_options(cfg), nf);
    out << "lambda_star in [" << num(est.lower) << ", " << num(est.upper) << "]\n"
        << "Lambda = " << num(est.capital_lambda) << '\n'
        << "nontrivial_floor = " << num(nf.nontrivial_floor) << '\n'
        << "energy_floor = " << num(nf.energy_floor) << '\n';
  }
  if (!cfg.diagram_out.empty())
    write_diagram(cfg.diagram_out, est.diagram,
                  variant == Variant::Plus ? CsvSchema::Plus : CsvSchema::Minus);
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, Variant variant, double from, double to, std::size_t steps,
              std::string out_path, unsigned jobs, std::ostream& out) {
  if (from > to) throw UsageError("--from must not exceed --to");
  if (steps == 0) throw UsageError("--steps must be >= 1");
  if (steps > 1 && from == to) throw UsageError("--from equals --to with several steps");
  if (variant == Variant::Plus && !(from > 0.0)) throw UsageError("--from must be positive");
  if (!(from >= 0.0)) throw UsageError("--from must be nonnegative");
  if (out_path.empty()) out_path = cfg.diagram_out;
  if (out_path.empty()) throw UsageError("sweep needs --out or diagram_out");
  const RunSetup setup = make_setup(cfg);
  ProblemSpec spec = setup.spec;
  spec.variant = variant;
  std::vector<double> lambdas(steps);
  for (std::size_t i = 0; i < steps; ++i)
    lambdas[i] = steps == 1 ? from : from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
  BifurcationDiagram d;
  if (variant == Variant::Plus) {
    d = sweep_branch_plus(setup.grid, spec, lambdas, iteration_options(cfg), jobs);
  } else {
    d = sweep_branch_minus(setup.grid, spec, lambdas, minimize_options(cfg), floors(cfg), jobs);
  }
  write_diagram(out_path, d, variant == Variant::Plus ? CsvSchema::Plus : CsvSchema::Minus);
  const auto converged = std::count_if(d.records.begin(), d.records.end(),
                                       [](const DiagramRecord& r) { return r.converged; });
  out << "wrote " << d.records.size() << " records (" << converged << " converged) to "
      << out_path << '\n';
  return kOk;
}

int cmd_eig(const RunConfig& cfg, std::ostream& out) {
  const GridPtr grid = build_grid(cfg.grid);
  const EigenPair e = principal_eigenpair(grid, 1e-10);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double target = grid->dimension() == 1 ? pi2 : 2.0 * pi2;
  out << "lambda1 = " << num(e.eigenvalue) << '\n'
      << "continuum = " << num(target) << (grid->dimension() == 1 ? " (pi^2)" : " (2 pi^2)") << '\n'
      << "relative_difference = " << num(std::abs(e.eigenvalue - target) / target) << '\n'
      << "iterations = " << e.iterations << '\n';
  return kOk;
}

bool unit_constant(const PotentialSpec& s) {
  return s.shape == PotentialShape::Constant && s.value == 1.0;
}

int cmd_oracle(const RunConfig& cfg, Variant variant, const std::string& out_path,
               std::ostream& out) {
  if (cfg.grid.kind != DomainKind::Interval || !unit_constant(cfg.k) || !unit_constant(cfg.h))
    throw UsageError("the shooting oracle needs an interval with unit potentials");
  constexpr std::size_t kSteps = 4000;
  OracleOptions oo;
  oo.nontrivial_floor = cfg.nontrivial_floor;
  std::vector<double> grid = default_slope_grid();
  if (variant == Variant::Minus) {
    oo.lambda_hi = 1e2;
    grid = log_slope_grid(1e-6, 1e2, 64);
  }
  const auto [lo, hi] = oracle_lambda_star(cfg.q, cfg.p, variant, cfg.tol_lambda, grid, kSteps, oo);
  out << "oracle lambda_star in [" << num(lo) << ", " << num(hi) << "]\n";
  if (!out_path.empty()) {
    std::vector<double> lambdas;
    for (int i = 1; i <= 10; ++i) lambdas.push_back(hi * i / 10.0);
    BifurcationDiagram d = oracle_diagram(cfg.q, cfg.p, variant, lambdas, grid, kSteps);
    d.lambda_star_bracket = std::make_pair(lo, hi);
    write_diagram(out_path, d, CsvSchema::Oracle);
  }
  return kOk;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  bool ok = true;
  for (int group : suite_groups()) {
    const CheckReport report = run_check_group(group, cfg);
    for (const CheckLine& line : report) print_check_line(out, line);
    ok = ok && all_passed(report);
  }
  out << (ok ? "ALL PASS" : "SOME CHECKS FAILED") << '\n';
  return ok ? kOk : kSolverFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bifurcation solver for -Δu = λ k u^q ± h u^p with Dirichlet data", "lefbif"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("-c,--config", config_path, "Run configuration file (key = value)");

  std::string variant_name = "plus";
  double lambda = 0.0, tol = 0.0, from = 0.0, to = 0.0;
  std::size_t steps = 0;
  unsigned jobs = 1;
  std::string out_path;

  auto* solve = app.add_subcommand("solve", "Solve at one λ");
  solve->add_option("--variant", variant_name)->required();
  solve->add_option("--lambda", lambda)->required();
  solve->add_option("--out", out_path, "Field output file");

  auto* star = app.add_subcommand("lambda-star", "Bracket the existence threshold");
  star->add_option("--variant", variant_name)->required();
  star->add_option("--tol", tol, "Bracket width (defaults to tol_lambda)");

  auto* sweep = app.add_subcommand("sweep", "Solve on a uniform λ grid and write the diagram");
  sweep->add_option("--variant", variant_name)->required();
  sweep->add_option("--from", from)->required();
  sweep->add_option("--to", to)->required();
  sweep->add_option("--steps", steps)->required();
  sweep->add_option("--out", out_path, "Diagram CSV file");
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* eig = app.add_subcommand("eig", "Principal eigenvalue of the discrete Laplacian");
  auto* oracle = app.add_subcommand("oracle", "Existence threshold by 1D shooting");
  oracle->add_option("--variant", variant_name)->required();
  oracle->add_option("--out", out_path, "Oracle diagram CSV file");
  auto* check = app.add_subcommand("check", "Run the invariant suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const RunConfig cfg = config_path.empty() ? RunConfig{} : read_config_file(config_path);
    const auto variant = [&] {
      try {
        return parse_variant(variant_name);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    };
    if (*solve) return cmd_solve(cfg, variant(), lambda, out_path, out, err);
    if (*star) return cmd_lambda_star(cfg, variant(), tol, out);
    if (*sweep) return cmd_sweep(cfg, variant(), from, to, steps, out_path, jobs, out);
    if (*eig) return cmd_eig(cfg, out);
    if (*oracle) return cmd_oracle(cfg, variant(), out_path, out);
    if (*check) return cmd_check(cfg, out);
  } catch (const ConfigError& e) {
    err << "config error";
    if (e.line() > 0) err << " (line " << e.line() << ")";
    err << ": " << e.reason() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidSpec& e) {
    err << "invalid problem: " << e.what() << '\n';
    return kUsage;
  } catch (const FileFormat& e) {
    err << "file error: " << e.what() << '\n';
    return kUsage;
  } catch (const NonPositivePotential& e) {
    err << "invalid potential: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kUsage;
}

}  // namespace lefcli
