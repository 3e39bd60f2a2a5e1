#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace lef {

struct DiagramRecord {
  double lambda = 0.0;
  double sup_norm = 0.0;
  double h1_norm = 0.0;
  double energy = 0.0;
  double stability_slack = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Only set for the minus variant.
  std::optional<bool> classified_nontrivial;

  friend bool operator==(const DiagramRecord&, const DiagramRecord&) = default;
};

/// Per-λ records in strictly increasing λ order.
struct BifurcationDiagram {
  std::vector<DiagramRecord> records;
  std::optional<std::pair<double, double>> lambda_star_bracket;

  /// Inserts keeping λ order; a record with an existing λ replaces it.
  void insert(DiagramRecord record);
  bool lambdas_strictly_increasing() const;
  /// Largest drop of sup_norm between consecutive records of the converged
  /// prefix (0 when nondecreasing).
  double monotonicity_violation() const;
};

enum class CsvSchema {
  Plus,    ///< lambda,sup_norm,h1_norm,energy,stability_slack,iterations,converged
  Minus,   ///< Plus columns + classified_nontrivial
  Oracle,  ///< Plus columns + source (always "oracle")
};

void write_diagram_csv(std::ostream& out, const BifurcationDiagram& diagram, CsvSchema schema);

/// Parses any of the three schemas, detected from the header line.
/// Throws FileFormat.
BifurcationDiagram read_diagram_csv(std::istream& in);

}  // namespace lef
