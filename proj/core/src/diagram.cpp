#include "lef/diagram.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "lef/error.hpp"

namespace lef {

namespace {

constexpr const char* kBaseHeader = "lambda,sup_norm,h1_norm,energy,stability_slack,iterations,converged";

}  // namespace

void BifurcationDiagram::insert(DiagramRecord record) {
  auto it = std::lower_bound(records.begin(), records.end(), record.lambda,
                             [](const DiagramRecord& r, double l) { return r.lambda < l; });
  if (it != records.end() && it->lambda == record.lambda)
    *it = std::move(record);
  else
    records.insert(it, std::move(record));
}

bool BifurcationDiagram::lambdas_strictly_increasing() const {
  for (std::size_t i = 1; i < records.size(); ++i)
    if (!(records[i].lambda > records[i - 1].lambda)) return false;
  return true;
}

double BifurcationDiagram::monotonicity_violation() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (!records[i].converged) break;
    worst = std::max(worst, records[i - 1].sup_norm - records[i].sup_norm);
  }
  return worst;
}

void write_diagram_csv(std::ostream& out, const BifurcationDiagram& diagram, CsvSchema schema) {
  const auto old_precision = out.precision(17);
  out << kBaseHeader;
  if (schema == CsvSchema::Minus) out << ",classified_nontrivial";
  if (schema == CsvSchema::Oracle) out << ",source";
  out << '\n';
  for (const auto& r : diagram.records) {
    out << r.lambda << ',' << r.sup_norm << ',' << r.h1_norm << ',' << r.energy << ','
        << r.stability_slack << ',' << r.iterations << ',' << (r.converged ? 1 : 0);
    if (schema == CsvSchema::Minus) out << ',' << (r.classified_nontrivial.value_or(false) ? 1 : 0);
    if (schema == CsvSchema::Oracle) out << ",oracle";
    out << '\n';
  }
  out.precision(old_precision);
}

namespace {

double to_real(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FileFormat("diagram line " + std::to_string(line) + ": bad number '" + s + "'");
  }
}

bool to_flag(const std::string& s, std::size_t line) {
  if (s == "0") return false;
  if (s == "1") return true;
  throw FileFormat("diagram line " + std::to_string(line) + ": expected 0/1, got '" + s + "'");
}

}  // namespace

BifurcationDiagram read_diagram_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FileFormat("empty diagram file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  CsvSchema schema;
  const std::string base = kBaseHeader;
  if (line == base)
    schema = CsvSchema::Plus;
  else if (line == base + ",classified_nontrivial")
    schema = CsvSchema::Minus;
  else if (line == base + ",source")
    schema = CsvSchema::Oracle;
  else
    throw FileFormat("unrecognized diagram header '" + line + "'");
  const std::size_t columns = schema == CsvSchema::Plus ? 7 : 8;

  BifurcationDiagram diagram;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    if (cells.size() != columns)
      throw FileFormat("diagram line " + std::to_string(line_no) + ": expected " +
                       std::to_string(columns) + " columns");
    DiagramRecord r;
    r.lambda = to_real(cells[0], line_no);
    r.sup_norm = to_real(cells[1], line_no);
    r.h1_norm = to_real(cells[2], line_no);
    r.energy = to_real(cells[3], line_no);
    r.stability_slack = to_real(cells[4], line_no);
    try {
      r.iterations = std::stoull(cells[5]);
    } catch (const std::exception&) {
      throw FileFormat("diagram line " + std::to_string(line_no) + ": bad iteration count");
    }
    r.converged = to_flag(cells[6], line_no);
    if (schema == CsvSchema::Minus) r.classified_nontrivial = to_flag(cells[7], line_no);
    if (schema == CsvSchema::Oracle && cells[7] != "oracle")
      throw FileFormat("diagram line " + std::to_string(line_no) + ": source must be oracle");
    if (!diagram.records.empty() && !(r.lambda > diagram.records.back().lambda))
      throw FileFormat("diagram lambdas must be strictly increasing");
    diagram.records.push_back(r);
  }
  return diagram;
}

}  // namespace lef
