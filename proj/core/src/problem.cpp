#include "lef/problem.hpp"

#include <string>

#include "lef/error.hpp"

namespace lef {

Variant parse_variant(std::string_view name) {
  if (name == "plus") return Variant::Plus;
  if (name == "minus") return Variant::Minus;
  throw InvalidArgument("variant must be plus or minus, got '" + std::string(name) + "'");
}

std::string_view to_string(Variant v) { return v == Variant::Plus ? "plus" : "minus"; }

void validate(const ProblemSpec& spec, const Grid& grid) {
  if (!(spec.q > 0.0 && spec.q < 1.0 && spec.p > 1.0))
    throw InvalidSpec("exponents must satisfy 0 < q < 1 < p");
  // N = 2: p < 5 keeps a margin below the critical growth.
  if (grid.kind() == DomainKind::Rectangle && !(spec.p < 5.0))
    throw InvalidSpec("rectangle domains require p < 5");
  if (!(spec.potentials.k.grid() == grid) || !(spec.potentials.h.grid() == grid))
    throw InvalidSpec("potentials are not sampled on the problem grid");
  if (!(spec.potentials.m > 0.0)) throw InvalidSpec("potentials must be positive");
}

ProblemSpec make_problem(double q, double p, Variant variant, PotentialPair potentials,
                         const Grid& grid) {
  ProblemSpec spec{q, p, variant, std::move(potentials)};
  validate(spec, grid);
  return spec;
}

}  // namespace lef
