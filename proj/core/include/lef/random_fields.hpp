#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lef/grid.hpp"

namespace lef {

/// Seeded generator whose output does not depend on the standard library's
/// distribution implementations, so results are reproducible everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Independent uniform values in [lo, hi] at interior nodes; Dirichlet.
Field random_nodal_field(const GridPtr& grid, Rng& rng, double lo, double hi);

/// Sine series with up to `modes` modes per axis and coefficients decaying
/// like 1/(m n); Dirichlet.
Field random_smooth_field(const GridPtr& grid, Rng& rng, int modes);

/// `count` Dirichlet fields alternating smooth and nodal noise, each scaled
/// to unit sup norm.
std::vector<Field> random_dirichlet_fields(const GridPtr& grid, std::size_t count,
                                           std::uint64_t seed);

}  // namespace lef
