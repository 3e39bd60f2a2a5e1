#pragma once

#include <cmath>
#include <string_view>

#include "lef/grid.hpp"
#include "lef/potentials.hpp"

namespace lef {

/// Sign in front of the convex term h u^p.
enum class Variant { Plus, Minus };

Variant parse_variant(std::string_view name);
std::string_view to_string(Variant v);

/// -Δu = λ k u^q ± h u^p on the unit domain with u = 0 on the boundary.
struct ProblemSpec {
  double q = 0.5;
  double p = 3.0;
  Variant variant = Variant::Plus;
  PotentialPair potentials;
};

/// Checks 0 < q < 1 < p, p < 5 on rectangles and that the potentials live on
/// `grid`. Throws InvalidSpec.
void validate(const ProblemSpec& spec, const Grid& grid);

ProblemSpec make_problem(double q, double p, Variant variant, PotentialPair potentials,
                         const Grid& grid);

/// max(u, 0)^r, so iterates that dip below zero never produce NaN.
inline double pos_pow(double u, double r) { return u > 0.0 ? std::pow(u, r) : 0.0; }

/// |u|^(r-1) u, taken as 0 at u = 0.
inline double signed_pow(double u, double r) {
  if (u == 0.0) return 0.0;
  return u > 0.0 ? std::pow(u, r) : -std::pow(-u, r);
}

}  // namespace lef
