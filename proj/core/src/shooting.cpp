#include "lef/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lef/error.hpp"

namespace lef {

namespace {

constexpr double kBlowUp = 1e150;
constexpr double kRootTol = 1e-10;

std::function<double(double)> nonlinearity(double lambda, double q, double p, Variant variant) {
  const double sign = variant == Variant::Plus ? 1.0 : -1.0;
  return [=](double u) { return lambda * pos_pow(u, q) + sign * pos_pow(u, p); };
}

double terminal_value(const std::function<double(double)>& f, double s, std::size_t steps) {
  return shoot(f, s, steps).terminal;
}

double refine_root(const std::function<double(double)>& f, double a, double b, double fa,
                   std::size_t steps) {
  while (b - a > kRootTol) {
    const double m = 0.5 * (a + b);
    const double fm = terminal_value(f, m, steps);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Maximizes the terminal value over [a, b] in log s; returns (s, value).
std::pair<double, double> golden_max(const std::function<double(double)>& f, double a, double b,
                                     std::size_t steps) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = std::log(a), hi = std::log(b);
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = terminal_value(f, std::exp(x1), steps), f2 = terminal_value(f, std::exp(x2), steps);
  while (hi - lo > 1e-12) {
    if (f1 > 0.0 || f2 > 0.0) break;
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = terminal_value(f, std::exp(x2), steps);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = terminal_value(f, std::exp(x1), steps);
    }
  }
  return f1 > f2 ? std::make_pair(std::exp(x1), f1) : std::make_pair(std::exp(x2), f2);
}

std::vector<double> roots_of(const std::function<double(double)>& f,
                             const std::vector<double>& s_grid, std::size_t steps) {
  std::vector<double> roots;
  const std::size_t n = s_grid.size();
  if (n == 0) return roots;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = terminal_value(f, s_grid[i], steps);
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i] == 0.0) roots.push_back(s_grid[i]);
    if (i + 1 < n && t[i] != 0.0 && t[i + 1] != 0.0 && (t[i] < 0.0) != (t[i + 1] < 0.0))
      roots.push_back(refine_root(f, s_grid[i], s_grid[i + 1], t[i], steps));
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(t[i] < 0.0 && t[i - 1] < 0.0 && t[i + 1] < 0.0)) continue;
    if (t[i] < t[i - 1] || t[i] < t[i + 1]) continue;
    const auto [peak, value] = golden_max(f, s_grid[i - 1], s_grid[i + 1], steps);
    if (!(value > 0.0)) continue;
    roots.push_back(refine_root(f, s_grid[i - 1], peak, t[i - 1], steps));
    roots.push_back(refine_root(f, peak, s_grid[i + 1], value, steps));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

void check_steps(std::size_t steps) {
  if (steps < 1000) throw InvalidArgument("shoot: steps must be >= 1000");
}

void check_grid(const std::vector<double>& s_grid) {
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > 0.0)) throw InvalidArgument("slope grid must be positive");
    if (i > 0 && !(s_grid[i] > s_grid[i - 1]))
      throw InvalidArgument("slope grid must be increasing");
  }
}

}  // namespace

ShootingResult shoot(const std::function<double(double)>& f, double s, std::size_t steps) {
  check_steps(steps);
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("shoot: slope must be positive");
  const double h = 1.0 / static_cast<double>(steps);
  ShootingResult r{s, 0.0, {}, false, false};
  r.profile.assign(steps + 1, 0.0);
  double u = 0.0, v = s;
  for (std::size_t i = 0; i < steps; ++i) {
    const double k1u = v, k1v = -f(u);
    const double k2u = v + 0.5 * h * k1v, k2v = -f(u + 0.5 * h * k1u);
    const double k3u = v + 0.5 * h * k2v, k3v = -f(u + 0.5 * h * k2u);
    const double k4u = v + h * k3v, k4v = -f(u + h * k3u);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    r.profile[i + 1] = u;
    if (!std::isfinite(u) || std::abs(u) > kBlowUp) {
      r.blew_up = true;
      r.terminal = std::numeric_limits<double>::max();
      for (std::size_t j = i + 1; j <= steps; ++j)
        r.profile[j] = std::copysign(kBlowUp, std::isfinite(u) ? u : 1.0);
      return r;
    }
    if (u < 0.0 && i + 1 < steps) {
      r.crossed_zero = true;
      const double x = static_cast<double>(i + 1) * h;
      for (std::size_t j = i + 2; j <= steps; ++j)
        r.profile[j] = u + v * (static_cast<double>(j) * h - x);
      r.terminal = u + v * (1.0 - x);
      return r;
    }
  }
  r.terminal = u;
  return r;
}

ShootingResult shoot(double lambda, double q, double p, Variant variant, double s,
                     std::size_t steps) {
  return shoot(nonlinearity(lambda, q, p, variant), s, steps);
}

std::vector<double> log_slope_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi > lo) || count < 2) throw InvalidArgument("invalid slope grid bounds");
  std::vector<double> g(count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  return g;
}

std::vector<double> default_slope_grid() { return log_slope_grid(1e-3, 1e3, 64); }

std::vector<double> solution_count(double lambda, double q, double p, Variant variant,
                                   const std::vector<double>& s_grid, std::size_t steps) {
  check_steps(steps);
  check_grid(s_grid);
  return roots_of(nonlinearity(lambda, q, p, variant), s_grid, steps);
}

namespace {

bool oracle_exists(double lambda, double q, double p, Variant variant,
                   const std::vector<double>& s_grid, std::size_t steps, double floor) {
  const auto roots = solution_count(lambda, q, p, variant, s_grid, steps);
  if (variant == Variant::Plus) return !roots.empty();
  for (double s : roots) {
    const auto r = shoot(lambda, q, p, variant, s, steps);
    if (*std::max_element(r.profile.begin(), r.profile.end()) > floor) return true;
  }
  return false;
}

}  // namespace

std::pair<double, double> oracle_lambda_star(double q, double p, Variant variant,
                                             double tol_lambda,
                                             const std::vector<double>& s_grid, std::size_t steps,
                                             const OracleOptions& options) {
  if (!(tol_lambda > 0.0)) throw InvalidArgument("tol_lambda must be positive");
  const auto exists = [&](double lambda) {
    return oracle_exists(lambda, q, p, variant, s_grid, steps, options.nontrivial_floor);
  };
  double lo = options.lambda_lo, hi = options.lambda_hi;
  const bool at_lo = exists(lo), at_hi = exists(hi);
  if (at_lo == at_hi)
    throw BracketInvalid("existence does not change over [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
  // Plus: solutions below the threshold. Minus: solutions above it.
  const bool below = at_lo;
  while (hi - lo > tol_lambda) {
    const double mid = 0.5 * (lo + hi);
    (exists(mid) == below ? lo : hi) = mid;
  }
  return {lo, hi};
}

Field profile_on_grid(const ShootingResult& result, const GridPtr& grid) {
  if (grid->kind() != DomainKind::Interval)
    throw UnsupportedKind("shooting profiles live on the interval");
  const std::size_t steps = result.profile.size() - 1;
  return Field::sample(
      grid,
      [&](double x, double) {
        const double t = x * static_cast<double>(steps);
        const std::size_t i = std::min(static_cast<std::size_t>(t), steps - 1);
        const double w = t - static_cast<double>(i);
        return (1.0 - w) * result.profile[i] + w * result.profile[i + 1];
      },
      true);
}

BifurcationDiagram oracle_diagram(double q, double p, Variant variant,
                                  const std::vector<double>& lambdas,
                                  const std::vector<double>& s_grid, std::size_t steps) {
  const double sign = variant == Variant::Plus ? 1.0 : -1.0;
  BifurcationDiagram d;
  for (double lambda : lambdas) {
    DiagramRecord rec;
    rec.lambda = lambda;
    const auto roots = solution_count(lambda, q, p, variant, s_grid, steps);
    rec.iterations = roots.size();
    rec.converged = !roots.empty();
    if (!roots.empty()) {
      const auto r = shoot(lambda, q, p, variant, roots.front(), steps);
      const auto& u = r.profile;
      const double h = 1.0 / static_cast<double>(steps);
      double grad2 = 0.0, kq = 0.0, hp = 0.0;
      for (std::size_t i = 0; i < steps; ++i) {
        const double du = (u[i + 1] - u[i]) / h;
        grad2 += h * du * du;
      }
      for (std::size_t i = 0; i <= steps; ++i) {
        const double w = (i == 0 || i == steps) ? 0.5 * h : h;
        kq += w * pos_pow(u[i], q + 1.0);
        hp += w * pos_pow(u[i], p + 1.0);
      }
      rec.sup_norm = *std::max_element(u.begin(), u.end());
      rec.h1_norm = std::sqrt(grad2);
      rec.energy = 0.5 * grad2 - lambda / (q + 1.0) * kq - sign * hp / (p + 1.0);
      rec.stability_slack = grad2 - lambda * q * kq - sign * p * hp;
    }
    d.insert(rec);
  }
  return d;
}

}  // namespace lef
