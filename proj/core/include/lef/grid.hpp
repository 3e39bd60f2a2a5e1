#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace lef {

enum class DomainKind { Interval, Rectangle };

DomainKind parse_domain_kind(std::string_view name);
std::string_view to_string(DomainKind kind);

/// Node counts per axis, boundary included. `ny` is ignored for intervals.
struct GridSpec {
  DomainKind kind = DomainKind::Interval;
  std::size_t nx = 201;
  std::size_t ny = 1;
};

/// Uniform node set on [0,1] or [0,1]^2 with lexicographic ordering
/// (x index fastest). Node (i, j) has linear index j * nx + i.
class Grid {
 public:
  explicit Grid(const GridSpec& spec);

  DomainKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return kind_ == DomainKind::Interval ? 1 : 2; }
  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return nx_ * ny_; }
  std::size_t interior_count() const noexcept { return interior_.size(); }
  std::size_t boundary_count() const noexcept { return size() - interior_.size(); }

  double hx() const noexcept { return hx_; }
  /// 1 for intervals so that `cell_measure()` is the 1D cell length.
  double hy() const noexcept { return hy_; }
  double cell_measure() const noexcept { return hx_ * hy_; }

  double x(std::size_t node) const noexcept { return xs_[node % nx_]; }
  double y(std::size_t node) const noexcept { return ys_[node / nx_]; }
  std::span<const double> x_coordinates() const noexcept { return xs_; }
  std::span<const double> y_coordinates() const noexcept { return ys_; }

  bool is_interior(std::size_t node) const noexcept { return mask_[node] != 0; }
  std::span<const std::size_t> interior_nodes() const noexcept { return interior_; }

  /// Composite trapezoidal weight of a node; weights sum to 1.
  double quadrature_weight(std::size_t node) const noexcept;

  /// Discrete principal eigenvalue of the Dirichlet Laplacian, closed form.
  double principal_eigenvalue_exact() const noexcept;
  /// Largest eigenvalue of the discrete Dirichlet Laplacian, closed form.
  double largest_eigenvalue_exact() const noexcept;

  GridSpec spec() const noexcept { return {kind_, nx_, ny_}; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.kind_ == b.kind_ && a.nx_ == b.nx_ && a.ny_ == b.ny_;
  }

 private:
  DomainKind kind_;
  std::size_t nx_;
  std::size_t ny_;
  double hx_;
  double hy_;
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<unsigned char> mask_;
  std::vector<std::size_t> interior_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(const GridSpec& spec);
GridPtr build_interval(std::size_t count);
GridPtr build_rectangle(std::size_t nx, std::size_t ny);

/// Real values on the nodes of a grid. Immutable once constructed.
///
/// A Dirichlet field has all boundary values pinned to exactly zero; this is
/// checked on construction together with finiteness of every value.
class Field {
 public:
  Field(GridPtr grid, std::vector<double> values, bool dirichlet);

  static Field zeros(GridPtr grid, bool dirichlet = true);
  static Field constant(GridPtr grid, double value);
  /// Samples f(x, y) at every node; boundary samples are replaced by 0 when
  /// `dirichlet` is set.
  static Field sample(GridPtr grid, const std::function<double(double, double)>& f,
                      bool dirichlet);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t node) const noexcept { return values_[node]; }
  std::size_t size() const noexcept { return values_.size(); }
  bool dirichlet() const noexcept { return dirichlet_; }

  /// Copy of the values with the boundary zeroed; result is Dirichlet.
  Field with_dirichlet() const;
  std::vector<double> to_vector() const { return values_; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
  bool dirichlet_;
};

/// Throws GridMismatch unless both fields live on equal grids.
void require_same_grid(const Field& a, const Field& b);
void require_grid(const Grid& grid, const Field& f);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
Field pointwise_product(const Field& a, const Field& b);
Field pointwise_max(const Field& a, const Field& b);
Field abs(const Field& a);

double min_value(const Field& f);
double max_value(const Field& f);
/// Smallest value over interior nodes only.
double interior_min(const Field& f);

}  // namespace lef
