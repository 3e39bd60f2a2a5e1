#include "lef/potentials.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "lef/error.hpp"
#include "lef/field_io.hpp"

namespace lef {

PotentialSpec PotentialSpec::constant(double value) {
  PotentialSpec s;
  s.shape = PotentialShape::Constant;
  s.value = value;
  return s;
}

PotentialSpec PotentialSpec::affine(double a0, double ax, double ay) {
  PotentialSpec s;
  s.shape = PotentialShape::Affine;
  s.a0 = a0;
  s.ax = ax;
  s.ay = ay;
  return s;
}

PotentialSpec PotentialSpec::gaussian_bump(double base, double amplitude, double width, double cx,
                                           double cy) {
  PotentialSpec s;
  s.shape = PotentialShape::GaussianBump;
  s.base = base;
  s.amplitude = amplitude;
  s.width = width;
  s.cx = cx;
  s.cy = cy;
  return s;
}

PotentialSpec PotentialSpec::file(std::string path) {
  PotentialSpec s;
  s.shape = PotentialShape::File;
  s.path = std::move(path);
  return s;
}

PotentialSpec parse_potential_spec(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string shape;
  is >> shape;
  if (shape == "file") {
    std::string path;
    is >> path;
    if (path.empty()) throw InvalidArgument("file potential needs a path");
    return PotentialSpec::file(path);
  }
  std::vector<double> args;
  std::string token;
  while (is >> token) {
    try {
      std::size_t used = 0;
      args.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw InvalidArgument("bad potential parameter '" + token + "'");
    }
  }
  for (double a : args)
    if (!std::isfinite(a)) throw InvalidArgument("potential parameters must be finite");
  if (shape == "constant" && args.size() == 1) return PotentialSpec::constant(args[0]);
  if (shape == "affine" && (args.size() == 2 || args.size() == 3))
    return PotentialSpec::affine(args[0], args[1], args.size() == 3 ? args[2] : 0.0);
  if (shape == "gaussian" && (args.size() == 4 || args.size() == 5))
    return PotentialSpec::gaussian_bump(args[0], args[1], args[2], args[3],
                                        args.size() == 5 ? args[4] : 0.5);
  throw InvalidArgument("unrecognized potential '" + std::string(text) + "'");
}

std::string describe(const PotentialSpec& s) {
  std::ostringstream os;
  os.precision(17);
  switch (s.shape) {
    case PotentialShape::Constant:
      os << "constant " << s.value;
      break;
    case PotentialShape::Affine:
      os << "affine " << s.a0 << ' ' << s.ax << ' ' << s.ay;
      break;
    case PotentialShape::GaussianBump:
      os << "gaussian " << s.base << ' ' << s.amplitude << ' ' << s.width << ' ' << s.cx << ' '
         << s.cy;
      break;
    case PotentialShape::File:
      os << "file " << s.path;
      break;
  }
  return os.str();
}

Field make_potential(const GridPtr& grid, const PotentialSpec& spec) {
  Field field = [&]() -> Field {
    switch (spec.shape) {
      case PotentialShape::Constant:
        return Field::constant(grid, spec.value);
      case PotentialShape::Affine:
        return Field::sample(
            grid, [&](double x, double y) { return spec.a0 + spec.ax * x + spec.ay * y; }, false);
      case PotentialShape::GaussianBump: {
        if (!(spec.width > 0.0)) throw InvalidArgument("bump width must be positive");
        const bool two_d = grid->kind() == DomainKind::Rectangle;
        return Field::sample(
            grid,
            [&](double x, double y) {
              double r2 = (x - spec.cx) * (x - spec.cx);
              if (two_d) r2 += (y - spec.cy) * (y - spec.cy);
              return spec.base + spec.amplitude * std::exp(-r2 / (2.0 * spec.width * spec.width));
            },
            false);
      }
      case PotentialShape::File: {
        Field f = read_field_file(spec.path);
        if (!(f.grid() == *grid))
          throw FileFormat("potential file '" + spec.path + "' is on a different grid");
        return Field(grid, f.to_vector(), false);
      }
    }
    throw InvalidArgument("unknown potential shape");
  }();
  for (std::size_t n = 0; n < field.size(); ++n)
    if (!(field[n] > 0.0))
      throw NonPositivePotential("potential '" + describe(spec) + "' is not positive at node " +
                                 std::to_string(n));
  return field;
}

PotentialPair pair_stats(Field k, Field h) {
  require_same_grid(k, h);
  const double min_k = min_value(k), min_h = min_value(h);
  if (!(min_k > 0.0) || !(min_h > 0.0))
    throw NonPositivePotential("potentials must be strictly positive at every node");
  const double sup_k = max_value(k), sup_h = max_value(h);
  return PotentialPair{std::move(k), std::move(h), std::min(min_k, min_h), sup_k, sup_h,
                       min_k,        min_h};
}

PotentialPair unit_potentials(const GridPtr& grid) {
  return pair_stats(Field::constant(grid, 1.0), Field::constant(grid, 1.0));
}

}  // namespace lef
