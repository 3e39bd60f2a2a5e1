#include "lef/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lef/error.hpp"

namespace lef {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(std::size_t line, std::string_view key, std::string_view value) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(x))
    throw ConfigError(line, std::string(key) + ": expected a number, got '" + std::string(value) + "'");
  return x;
}

std::uint64_t parse_count(std::size_t line, std::string_view key, std::string_view value) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError(line, std::string(key) + ": expected a nonnegative integer, got '" +
                                std::string(value) + "'");
  return x;
}

double positive(std::size_t line, std::string_view key, std::string_view value) {
  const double x = parse_real(line, key, value);
  if (!(x > 0.0)) throw ConfigError(line, std::string(key) + " must be positive");
  return x;
}

void parse_counts(std::size_t line, std::string_view value, RunConfig& cfg) {
  std::string text(value);
  for (char& c : text)
    if (c == 'x' || c == 'X' || c == ',') c = ' ';
  std::istringstream in(text);
  std::vector<std::string> parts;
  for (std::string t; in >> t;) parts.push_back(t);
  if (parts.empty() || parts.size() > 2) throw ConfigError(line, "counts: expected one or two integers");
  cfg.grid.nx = parse_count(line, "counts", parts[0]);
  cfg.grid.ny = parts.size() == 2 ? parse_count(line, "counts", parts[1]) : cfg.grid.nx;
  if (cfg.grid.nx < 5 || cfg.grid.ny < 5) throw ConfigError(line, "counts must be >= 5");
}

PotentialSpec parse_potential(std::size_t line, std::string_view key, std::string_view value) {
  try {
    return parse_potential_spec(value);
  } catch (const Error& e) {
    throw ConfigError(line, std::string(key) + ": " + e.what());
  }
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  bool counts_given = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(line_no, std::string(key) + ": missing value");

    if (key == "kind") {
      try {
        cfg.grid.kind = parse_domain_kind(value);
      } catch (const Error& e) {
        throw ConfigError(line_no, e.what());
      }
    } else if (key == "counts") {
      parse_counts(line_no, value, cfg);
      counts_given = true;
    } else if (key == "q") {
      cfg.q = parse_real(line_no, key, value);
      if (!(cfg.q > 0.0 && cfg.q < 1.0)) throw ConfigError(line_no, "q must satisfy 0 < q < 1");
    } else if (key == "p") {
      cfg.p = parse_real(line_no, key, value);
      if (!(cfg.p > 1.0)) throw ConfigError(line_no, "p must satisfy p > 1");
    } else if (key == "variant") {
      try {
        cfg.variant = parse_variant(value);
      } catch (const Error& e) {
        throw ConfigError(line_no, e.what());
      }
    } else if (key == "k") {
      cfg.k = parse_potential(line_no, key, value);
    } else if (key == "h") {
      cfg.h = parse_potential(line_no, key, value);
    } else if (key == "tol_linear") {
      cfg.tol_linear = positive(line_no, key, value);
    } else if (key == "tol_fixed_point") {
      cfg.tol_fixed_point = positive(line_no, key, value);
    } else if (key == "tol_lambda") {
      cfg.tol_lambda = positive(line_no, key, value);
    } else if (key == "tol_gradient") {
      cfg.tol_gradient = positive(line_no, key, value);
    } else if (key == "nontrivial_floor") {
      cfg.nontrivial_floor = positive(line_no, key, value);
    } else if (key == "energy_floor") {
      cfg.energy_floor = positive(line_no, key, value);
    } else if (key == "norm_cap") {
      cfg.norm_cap = positive(line_no, key, value);
    } else if (key == "max_iter") {
      cfg.max_iter = parse_count(line_no, key, value);
      if (cfg.max_iter == 0) throw ConfigError(line_no, "max_iter must be >= 1");
    } else if (key == "seed") {
      cfg.seed = parse_count(line_no, key, value);
    } else if (key == "field_out") {
      cfg.field_out = std::string(value);
    } else if (key == "diagram_out") {
      cfg.diagram_out = std::string(value);
    } else {
      throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
    }
    if (end == text.size()) break;
  }
  if (cfg.grid.kind == DomainKind::Interval) {
    cfg.grid.ny = 1;
  } else {
    if (!counts_given) cfg.grid.nx = cfg.grid.ny = 65;
    if (!(cfg.p < 5.0)) throw ConfigError(0, "p must be < 5 on the rectangle");
  }
  return cfg;
}

RunConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

RunSetup make_setup(const RunConfig& c) {
  GridPtr grid = build_grid(c.grid);
  Field k = make_potential(grid, c.k);
  Field h = make_potential(grid, c.h);
  ProblemSpec spec = make_problem(c.q, c.p, c.variant, pair_stats(std::move(k), std::move(h)), *grid);
  return {std::move(grid), std::move(spec)};
}

IterationOptions iteration_options(const RunConfig& c) {
  IterationOptions o;
  o.tol = c.tol_fixed_point;
  o.linear_tol = c.tol_linear;
  o.max_iter = c.max_iter;
  o.norm_cap = c.norm_cap;
  return o;
}

MinimizeOptions minimize_options(const RunConfig& c) {
  MinimizeOptions o;
  o.gradient_tol = c.tol_gradient;
  o.linear_tol = c.tol_linear;
  o.seed = c.seed;
  return o;
}

NontrivialFloors floors(const RunConfig& c) { return {c.nontrivial_floor, c.energy_floor}; }

}  // namespace lef
