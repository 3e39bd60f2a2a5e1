#include "lef/field_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lef/error.hpp"

namespace lef {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream is(line);
  while (std::getline(is, part, sep)) parts.push_back(part);
  return parts;
}

double parse_real(const std::string& text, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw FileFormat("field line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
}

}  // namespace

void write_field(std::ostream& out, const Field& field) {
  const Grid& g = field.grid();
  const auto old_precision = out.precision(17);
  out << "# kind " << to_string(g.kind()) << '\n';
  if (g.kind() == DomainKind::Interval) {
    out << "# counts " << g.nx() << '\n' << "# h " << g.hx() << '\n';
    for (std::size_t n = 0; n < g.size(); ++n) out << g.x(n) << ',' << field[n] << '\n';
  } else {
    out << "# counts " << g.nx() << ' ' << g.ny() << '\n'
        << "# h " << g.hx() << ' ' << g.hy() << '\n';
    for (std::size_t n = 0; n < g.size(); ++n)
      out << g.x(n) << ',' << g.y(n) << ',' << field[n] << '\n';
  }
  out.precision(old_precision);
}

void write_field_file(const std::filesystem::path& path, const Field& field) {
  std::ofstream out(path);
  if (!out) throw FileFormat("cannot open '" + path.string() + "' for writing");
  write_field(out, field);
  if (!out) throw FileFormat("write to '" + path.string() + "' failed");
}

Field read_field(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::string kind_name;
  std::vector<std::size_t> counts;
  std::vector<double> spacing;
  std::vector<std::vector<double>> records;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream is(line.substr(1));
      std::string key;
      is >> key;
      if (key == "kind") {
        is >> kind_name;
      } else if (key == "counts") {
        std::size_t c;
        while (is >> c) counts.push_back(c);
      } else if (key == "h") {
        double h;
        while (is >> h) spacing.push_back(h);
      }
      continue;
    }
    std::vector<double> rec;
    for (const auto& part : split(line, ',')) rec.push_back(parse_real(part, line_no));
    records.push_back(std::move(rec));
  }

  if (kind_name.empty() || counts.empty() || spacing.empty())
    throw FileFormat("field file lacks kind/counts/h header");
  DomainKind kind;
  try {
    kind = parse_domain_kind(kind_name);
  } catch (const UnsupportedKind& e) {
    throw FileFormat(e.what());
  }
  const std::size_t axes = kind == DomainKind::Interval ? 1 : 2;
  if (counts.size() != axes || spacing.size() != axes)
    throw FileFormat("header counts/h do not match the domain kind");

  GridPtr grid;
  try {
    grid = build_grid({kind, counts[0], axes == 2 ? counts[1] : 1});
  } catch (const GridTooCoarse& e) {
    throw FileFormat(e.what());
  }
  if (std::abs(spacing[0] - grid->hx()) > 1e-12 ||
      (axes == 2 && std::abs(spacing[1] - grid->hy()) > 1e-12))
    throw FileFormat("header spacing inconsistent with counts");
  if (records.size() != grid->size())
    throw FileFormat("expected " + std::to_string(grid->size()) + " records, found " +
                     std::to_string(records.size()));

  std::vector<double> values(grid->size());
  for (std::size_t n = 0; n < records.size(); ++n) {
    const auto& r = records[n];
    if (r.size() != axes + 1)
      throw FileFormat("record " + std::to_string(n) + " has " + std::to_string(r.size()) +
                       " columns");
    if (std::abs(r[0] - grid->x(n)) > 1e-9 || (axes == 2 && std::abs(r[1] - grid->y(n)) > 1e-9))
      throw FileFormat("record " + std::to_string(n) + " coordinates out of order");
    if (!std::isfinite(r.back())) throw FileFormat("non-finite value in record " + std::to_string(n));
    values[n] = r.back();
  }
  return Field(grid, std::move(values), false);
}

Field read_field_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileFormat("cannot open '" + path.string() + "'");
  return read_field(in);
}

}  // namespace lef
