#include "lef/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lef/error.hpp"

namespace lef {

DomainKind parse_domain_kind(std::string_view name) {
  if (name == "interval") return DomainKind::Interval;
  if (name == "rectangle") return DomainKind::Rectangle;
  throw UnsupportedKind("unsupported domain kind '" + std::string(name) +
                        "' (expected interval or rectangle)");
}

std::string_view to_string(DomainKind kind) {
  return kind == DomainKind::Interval ? "interval" : "rectangle";
}

namespace {

constexpr std::size_t kMinCount = 5;

std::vector<double> axis(std::size_t n) {
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  c.back() = 1.0;
  return c;
}

double sin2(double a) {
  const double s = std::sin(a);
  return s * s;
}

}  // namespace

Grid::Grid(const GridSpec& spec)
    : kind_(spec.kind), nx_(spec.nx), ny_(spec.kind == DomainKind::Interval ? 1 : spec.ny) {
  if (kind_ != DomainKind::Interval && kind_ != DomainKind::Rectangle)
    throw UnsupportedKind("unsupported domain kind");
  if (nx_ < kMinCount || (kind_ == DomainKind::Rectangle && ny_ < kMinCount))
    throw GridTooCoarse("grid needs at least " + std::to_string(kMinCount) +
                        " nodes per axis");
  hx_ = 1.0 / static_cast<double>(nx_ - 1);
  hy_ = kind_ == DomainKind::Interval ? 1.0 : 1.0 / static_cast<double>(ny_ - 1);
  xs_ = axis(nx_);
  ys_ = kind_ == DomainKind::Interval ? std::vector<double>{0.0} : axis(ny_);

  mask_.assign(size(), 0);
  for (std::size_t j = 0; j < ny_; ++j) {
    const bool row_inside = kind_ == DomainKind::Interval || (j > 0 && j + 1 < ny_);
    if (!row_inside) continue;
    for (std::size_t i = 1; i + 1 < nx_; ++i) {
      const std::size_t node = j * nx_ + i;
      mask_[node] = 1;
      interior_.push_back(node);
    }
  }
}

double Grid::quadrature_weight(std::size_t node) const noexcept {
  const std::size_t i = node % nx_;
  const std::size_t j = node / nx_;
  double w = hx_ * ((i == 0 || i + 1 == nx_) ? 0.5 : 1.0);
  if (kind_ == DomainKind::Rectangle) w *= hy_ * ((j == 0 || j + 1 == ny_) ? 0.5 : 1.0);
  return w;
}

double Grid::principal_eigenvalue_exact() const noexcept {
  using std::numbers::pi;
  double value = 4.0 / (hx_ * hx_) * sin2(pi * hx_ / 2.0);
  if (kind_ == DomainKind::Rectangle) value += 4.0 / (hy_ * hy_) * sin2(pi * hy_ / 2.0);
  return value;
}

double Grid::largest_eigenvalue_exact() const noexcept {
  using std::numbers::pi;
  const auto top = [](double h, std::size_t n) {
    return 4.0 / (h * h) * sin2(pi * h * static_cast<double>(n - 2) / 2.0);
  };
  double value = top(hx_, nx_);
  if (kind_ == DomainKind::Rectangle) value += top(hy_, ny_);
  return value;
}

GridPtr build_grid(const GridSpec& spec) { return std::make_shared<const Grid>(spec); }

GridPtr build_interval(std::size_t count) {
  return build_grid({DomainKind::Interval, count, 1});
}

GridPtr build_rectangle(std::size_t nx, std::size_t ny) {
  return build_grid({DomainKind::Rectangle, nx, ny});
}

Field::Field(GridPtr grid, std::vector<double> values, bool dirichlet)
    : grid_(std::move(grid)), values_(std::move(values)), dirichlet_(dirichlet) {
  if (!grid_) throw InvalidField("field without a grid");
  if (values_.size() != grid_->size())
    throw InvalidField("field has " + std::to_string(values_.size()) + " values, grid has " +
                       std::to_string(grid_->size()) + " nodes");
  for (std::size_t n = 0; n < values_.size(); ++n) {
    if (!std::isfinite(values_[n]))
      throw InvalidField("non-finite field value at node " + std::to_string(n));
    if (dirichlet_ && !grid_->is_interior(n) && values_[n] != 0.0)
      throw InvalidField("Dirichlet field has nonzero boundary value at node " +
                         std::to_string(n));
  }
}

Field Field::zeros(GridPtr grid, bool dirichlet) {
  const std::size_t n = grid->size();
  return Field(std::move(grid), std::vector<double>(n, 0.0), dirichlet);
}

Field Field::constant(GridPtr grid, double value) {
  const std::size_t n = grid->size();
  return Field(std::move(grid), std::vector<double>(n, value), false);
}

Field Field::sample(GridPtr grid, const std::function<double(double, double)>& f,
                    bool dirichlet) {
  std::vector<double> v(grid->size(), 0.0);
  for (std::size_t n = 0; n < v.size(); ++n) {
    if (dirichlet && !grid->is_interior(n)) continue;
    v[n] = f(grid->x(n), grid->y(n));
  }
  return Field(std::move(grid), std::move(v), dirichlet);
}

Field Field::with_dirichlet() const {
  std::vector<double> v = values_;
  for (std::size_t n = 0; n < v.size(); ++n)
    if (!grid_->is_interior(n)) v[n] = 0.0;
  return Field(grid_, std::move(v), true);
}

void require_same_grid(const Field& a, const Field& b) {
  if (a.grid_ptr() != b.grid_ptr() && !(a.grid() == b.grid())) throw GridMismatch();
}

void require_grid(const Grid& grid, const Field& f) {
  if (&grid != &f.grid() && !(grid == f.grid())) throw GridMismatch();
}

namespace {

template <class Op>
Field combine(const Field& a, const Field& b, Op op) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = op(a[n], b[n]);
  return Field(a.grid_ptr(), std::move(v), a.dirichlet() && b.dirichlet());
}

}  // namespace

Field operator+(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

Field operator-(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

Field operator*(double s, const Field& a) {
  std::vector<double> v(a.size());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = s * a[n];
  return Field(a.grid_ptr(), std::move(v), a.dirichlet());
}

Field pointwise_product(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x * y; });
}

Field pointwise_max(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return std::max(x, y); });
}

Field abs(const Field& a) {
  std::vector<double> v(a.size());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = std::abs(a[n]);
  return Field(a.grid_ptr(), std::move(v), a.dirichlet());
}

double min_value(const Field& f) {
  return *std::min_element(f.values().begin(), f.values().end());
}

double max_value(const Field& f) {
  return *std::max_element(f.values().begin(), f.values().end());
}

double interior_min(const Field& f) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t n : f.grid().interior_nodes()) m = std::min(m, f[n]);
  return m;
}

}  // namespace lef
