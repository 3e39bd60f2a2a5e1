#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "lef/branch_minus.hpp"
#include "lef/branch_plus.hpp"
#include "lef/grid.hpp"
#include "lef/potentials.hpp"
#include "lef/problem.hpp"

namespace lef {

/// Settings for a run, read from a `key = value` file.
///
/// Keys: kind, counts, q, p, variant, k, h, tol_linear, tol_fixed_point,
/// tol_lambda, tol_gradient, nontrivial_floor, energy_floor, norm_cap,
/// max_iter, seed, field_out, diagram_out. `counts` takes one value for
/// intervals and two ("65 65" or "65x65") for rectangles; potentials use the
/// syntax of parse_potential_spec.
struct RunConfig {
  GridSpec grid{};
  double q = 0.5;
  double p = 3.0;
  Variant variant = Variant::Plus;
  PotentialSpec k = PotentialSpec::constant(1.0);
  PotentialSpec h = PotentialSpec::constant(1.0);
  double tol_linear = 1e-10;
  double tol_fixed_point = 1e-10;
  double tol_lambda = 1e-3;
  double tol_gradient = 1e-10;
  double nontrivial_floor = 1e-4;
  double energy_floor = 1e-10;
  double norm_cap = 1e6;
  std::size_t max_iter = 20000;
  std::uint64_t seed = 42;
  std::string field_out;
  std::string diagram_out;
};

/// Throws ConfigError(line, reason) for unknown keys, malformed lines or
/// values outside their ranges (line 0 for cross-key checks).
RunConfig parse_config(std::string_view text);
RunConfig read_config_file(const std::string& path);

/// Grid, potentials and problem assembled from a configuration.
struct RunSetup {
  GridPtr grid;
  ProblemSpec spec;
};

RunSetup make_setup(const RunConfig& config);
IterationOptions iteration_options(const RunConfig& config);
MinimizeOptions minimize_options(const RunConfig& config);
NontrivialFloors floors(const RunConfig& config);

}  // namespace lef
