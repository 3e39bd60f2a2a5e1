#pragma once

#include <filesystem>
#include <iosfwd>

#include "lef/grid.hpp"

namespace lef {

/// Text format: `#`-prefixed header lines `kind`, `counts`, `h`, then one
/// record per node, `x,value` or `x,y,value`, in lexicographic (row-major)
/// order with 17 significant digits.
void write_field(std::ostream& out, const Field& field);
void write_field_file(const std::filesystem::path& path, const Field& field);

/// Reads a field written by write_field. The result is not Dirichlet; use
/// Field::with_dirichlet when the boundary is known to vanish.
/// Throws FileFormat on malformed input.
Field read_field(std::istream& in);
Field read_field_file(const std::filesystem::path& path);

}  // namespace lef
