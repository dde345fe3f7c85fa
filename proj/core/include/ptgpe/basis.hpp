#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "ptgpe/grid.hpp"

namespace ptgpe {

using CoeffVector = Eigen::VectorXcd;

/// Largest order accepted by hermite_function.
inline constexpr int kMaxHermiteOrder = 64;

/// Orthonormal Hermite function h_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) exp(-x^2/2),
/// evaluated with the normalized three-term recurrence.
double hermite_function(int n, double x);

/// Table T(n, i) = h_n(xs[i]) for n = 0..n_max.
Eigen::MatrixXd hermite_table(int n_max, std::span<const double> xs);

/// One product state h_{n_x}(x) h_{n_y}(y). Its oscillator energy is 2(n_x + n_y + 1).
struct BasisState {
  int n_x = 0;
  int n_y = 0;
  int total() const { return n_x + n_y; }
  bool operator==(const BasisState&) const = default;
};

/// Number of product states with n_x + n_y <= n_max.
constexpr int triangular_count(int n_max) { return (n_max + 1) * (n_max + 2) / 2; }

/// Harmonic-oscillator product basis, truncated at total degree n_max, with the
/// quadrature grid used for every projection. Immutable after construction.
///
/// States are ordered by total degree, then by n_x ascending:
/// (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), ...
/// The basis functions are eigenfunctions of -lap + x^2 + y^2, so that operator is diagonal.
/// The per-axis sample tables stand in for the full (points x states) evaluation matrix;
/// every 2D evaluation factorizes through them.
class BasisSet {
 public:
  int n_max() const { return n_max_; }
  int size() const { return static_cast<int>(states_.size()); }
  const std::vector<BasisState>& states() const { return states_; }
  const GridSpec& grid() const { return grid_; }

  /// Index of (n_x, n_y), or -1 when outside the truncation.
  int index_of(int n_x, int n_y) const;

  /// Oscillator energies 2(n_x + n_y + 1) in state order.
  const Eigen::VectorXd& energies() const { return energies_; }

  /// h_n(x_i) and h_n(y_j), shape (n_max + 1) x points.
  const Eigen::MatrixXd& eval_x() const { return eval_x_; }
  const Eigen::MatrixXd& eval_y() const { return eval_y_; }

  /// Trapezoidal weight; uniform on the periodic grid.
  double quad_weight() const { return grid_.cell_area(); }

  /// Matrix elements <h_k| W |h_l> for a complex weight field on the basis grid.
  Eigen::MatrixXcd project_operator(const Wavefunction& weight) const;

  /// <h_k|h_l> under the grid quadrature.
  Eigen::MatrixXd gram() const;

  /// max |Gram - I|.
  double orthonormality_error() const;

  /// Evaluates sum_k c_k h_k on an arbitrary grid (not necessarily the basis grid).
  Wavefunction evaluate(const CoeffVector& c, const GridSpec& grid) const;

 private:
  friend BasisSet build_basis(int n_max, const GridSpec& grid);

  int n_max_ = 0;
  GridSpec grid_;
  std::vector<BasisState> states_;
  std::vector<int> lookup_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd eval_x_, eval_y_;
  // Row p of pair_x_ holds h_a(x_i) h_b(x_i) for the unordered pair (a, b) with a <= b.
  Eigen::MatrixXd pair_x_, pair_y_;
  std::vector<int> pair_index_;
};

/// Builds the basis on `grid`. Rejects grids whose Nyquist wavenumber cannot resolve the
/// cubic nonlinearity of degree-n_max states, or whose extent truncates h_{n_max}.
BasisSet build_basis(int n_max, const GridSpec& grid);

/// Default quadrature grid for a given truncation: 128 points per axis on
/// [-8, 8] for n_max <= 11, widened for larger bases.
GridSpec default_basis_grid(int n_max);

CoeffVector grid_to_coeffs(const Wavefunction& psi, const BasisSet& basis);
Wavefunction coeffs_to_grid(const CoeffVector& c, const BasisSet& basis);

}  // namespace ptgpe
