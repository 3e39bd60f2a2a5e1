#pragma once

#include <string>
#include <string_view>

#include "lef/grid.hpp"

namespace lef {

enum class PotentialShape { Constant, Affine, GaussianBump, File };

/// Description of a weight function k or h on the unit domain.
struct PotentialSpec {
  PotentialShape shape = PotentialShape::Constant;
  double value = 1.0;  // constant

  // affine: a0 + ax x + ay y
  double a0 = 1.0;
  double ax = 0.0;
  double ay = 0.0;

  // bump: base + amplitude exp(-|x - c|^2 / (2 width^2))
  double base = 1.0;
  double amplitude = 0.0;
  double width = 0.1;
  double cx = 0.5;
  double cy = 0.5;

  std::string path;  // file

  static PotentialSpec constant(double value);
  static PotentialSpec affine(double a0, double ax, double ay = 0.0);
  static PotentialSpec gaussian_bump(double base, double amplitude, double width, double cx,
                                     double cy = 0.5);
  static PotentialSpec file(std::string path);
};

/// Parses `constant V`, `affine A0 AX [AY]`, `gaussian BASE AMP WIDTH CX [CY]`
/// or `file PATH`. Throws InvalidArgument on anything else.
PotentialSpec parse_potential_spec(std::string_view text);
std::string describe(const PotentialSpec& spec);

/// Samples the potential at every node (non-Dirichlet field).
/// Throws NonPositivePotential if any node value is <= 0 and FileFormat for
/// unreadable files.
Field make_potential(const GridPtr& grid, const PotentialSpec& spec);

/// Weights k and h with their extrema. The essential infimum is taken as the
/// minimum over nodes.
struct PotentialPair {
  Field k;
  Field h;
  double m;  ///< min(min k, min h)
  double sup_k;
  double sup_h;
  double min_k;
  double min_h;
};

PotentialPair pair_stats(Field k, Field h);

/// k = h = 1.
PotentialPair unit_potentials(const GridPtr& grid);

}  // namespace lef
