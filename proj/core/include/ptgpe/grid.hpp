#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ptgpe {

using cdouble = std::complex<double>;

/// Uniform periodic grid. Sample i sits at x_min + i*dx with dx = (x_max - x_min)/n_x,
/// so the right edge is the periodic image of the left edge.
struct GridSpec {
  double x_min = -5.0;
  double x_max = 5.0;
  double y_min = -5.0;
  double y_max = 5.0;
  int n_x = 128;
  int n_y = 128;

  double dx() const { return (x_max - x_min) / n_x; }
  double dy() const { return (y_max - y_min) / n_y; }
  double cell_area() const { return dx() * dy(); }
  double x(int i) const { return x_min + i * dx(); }
  double y(int j) const { return y_min + j * dy(); }
  std::size_t size() const { return static_cast<std::size_t>(n_x) * static_cast<std::size_t>(n_y); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_x) + static_cast<std::size_t>(i);
  }
  bool contains(double px, double py) const {
    return px >= x_min && px < x_max && py >= y_min && py < y_max;
  }

  /// Square grid [-extent, extent]^2 with `points` samples per axis.
  static GridSpec square(double extent, int points) {
    return GridSpec{-extent, extent, -extent, extent, points, points};
  }

  bool operator==(const GridSpec&) const = default;
};

/// Returns an empty string when the grid is usable, otherwise the first violation.
std::string grid_violation(const GridSpec& grid);

/// Throws Error(InvalidArgument) when grid_violation is non-empty.
void validate_grid(const GridSpec& grid);

inline constexpr bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// Scalar samples on a GridSpec, stored row-major with y as the outer index.
template <typename T>
class GridField {
 public:
  GridField() = default;
  explicit GridField(const GridSpec& grid, T fill = T{}) : grid_(grid), values_(grid.size(), fill) {}
  GridField(const GridSpec& grid, std::vector<T> values) : grid_(grid), values_(std::move(values)) {}

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  T& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
  const T& operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
  T& operator[](std::size_t k) { return values_[k]; }
  const T& operator[](std::size_t k) const { return values_[k]; }

  T* data() { return values_.data(); }
  const T* data() const { return values_.data(); }
  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }

 private:
  GridSpec grid_;
  std::vector<T> values_;
};

using Wavefunction = GridField<cdouble>;
using RealField = GridField<double>;

/// Samples a callable f(x, y) on every grid point.
template <typename T, typename F>
GridField<T> sample(const GridSpec& grid, F&& f) {
  GridField<T> out(grid);
  for (int j = 0; j < grid.n_y; ++j)
    for (int i = 0; i < grid.n_x; ++i) out(i, j) = f(grid.x(i), grid.y(j));
  return out;
}

/// Trapezoidal (periodic) quadrature of |psi|^2.
double norm_squared(const Wavefunction& psi);

/// <a|b> under the same quadrature. Grids must match.
cdouble inner_product(const Wavefunction& a, const Wavefunction& b);

/// |<a|b>| / (|a| |b|), in [0, 1].
double fidelity(const Wavefunction& a, const Wavefunction& b);

/// Scales psi to unit quadrature norm; returns the norm before scaling.
double normalize(Wavefunction& psi);

double integrate(const RealField& f);

}  // namespace ptgpe
