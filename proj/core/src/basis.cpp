#include "ptgpe/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ptgpe/error.hpp"

namespace ptgpe {

double hermite_function(int n, double x) {
  if (n < 0 || n > kMaxHermiteOrder) {
    std::ostringstream os;
    os << "hermite_function: order " << n << " outside [0, " << kMaxHermiteOrder << "]";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  double prev = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return prev;
  double cur = std::numbers::sqrt2 * x * prev;
  for (int k = 1; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Eigen::MatrixXd hermite_table(int n_max, std::span<const double> xs) {
  if (n_max < 0 || n_max > kMaxHermiteOrder)
    throw Error(ErrorCode::InvalidArgument, "hermite_table: n_max out of range");
  const auto m = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd t(n_max + 1, m);
  const double c0 = std::pow(std::numbers::pi, -0.25);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = xs[static_cast<std::size_t>(i)];
    t(0, i) = c0 * std::exp(-0.5 * x * x);
    if (n_max >= 1) t(1, i) = std::numbers::sqrt2 * x * t(0, i);
    for (int k = 1; k < n_max; ++k)
      t(k + 1, i) = std::sqrt(2.0 / (k + 1)) * x * t(k, i) - std::sqrt(static_cast<double>(k) / (k + 1)) * t(k - 1, i);
  }
  return t;
}

namespace {

std::vector<double> axis_points(double lo, int n, double step) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + i * step;
  return xs;
}

Eigen::MatrixXd pair_products(const Eigen::MatrixXd& table, int n_max) {
  const int pairs = triangular_count(n_max);
  Eigen::MatrixXd out(pairs, table.cols());
  int p = 0;
  for (int a = 0; a <= n_max; ++a)
    for (int b = a; b <= n_max; ++b) out.row(p++) = table.row(a).cwiseProduct(table.row(b));
  return out;
}

}  // namespace

BasisSet build_basis(int n_max, const GridSpec& grid) {
  if (n_max < 0 || n_max > kMaxHermiteOrder)
    throw Error(ErrorCode::InvalidArgument, "build_basis: n_max out of range");
  validate_grid(grid);

  // Cubic terms of degree-n_max states reach wavenumbers around sqrt(2*(3 n_max) + 3).
  const double k_needed = std::sqrt(6.0 * n_max + 3.0);
  const double k_nyquist = std::numbers::pi / std::max(grid.dx(), grid.dy());
  if (k_nyquist < k_needed) {
    std::ostringstream os;
    os << "build_basis: grid too coarse for n_max=" << n_max << " (Nyquist wavenumber " << k_nyquist
       << " < " << k_needed << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  const double turning_point = std::sqrt(2.0 * n_max + 1.0);
  const double half_width = std::min(grid.x_max, grid.y_max);
  if (half_width < turning_point + 3.0) {
    std::ostringstream os;
    os << "build_basis: grid half-width " << half_width << " truncates h_" << n_max
       << " (need at least " << turning_point + 3.0 << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }

  BasisSet b;
  b.n_max_ = n_max;
  b.grid_ = grid;
  b.lookup_.assign(static_cast<std::size_t>((n_max + 1) * (n_max + 1)), -1);
  for (int total = 0; total <= n_max; ++total) {
    for (int nx = 0; nx <= total; ++nx) {
      b.lookup_[static_cast<std::size_t>(nx * (n_max + 1) + (total - nx))] = static_cast<int>(b.states_.size());
      b.states_.push_back({nx, total - nx});
    }
  }
  b.energies_.resize(b.size());
  for (int k = 0; k < b.size(); ++k) b.energies_(k) = 2.0 * (b.states_[static_cast<std::size_t>(k)].total() + 1);

  const auto xs = axis_points(grid.x_min, grid.n_x, grid.dx());
  const auto ys = axis_points(grid.y_min, grid.n_y, grid.dy());
  b.eval_x_ = hermite_table(n_max, xs);
  b.eval_y_ = hermite_table(n_max, ys);
  b.pair_x_ = pair_products(b.eval_x_, n_max);
  b.pair_y_ = pair_products(b.eval_y_, n_max);
  b.pair_index_.assign(static_cast<std::size_t>((n_max + 1) * (n_max + 1)), -1);
  int p = 0;
  for (int a = 0; a <= n_max; ++a) {
    for (int c = a; c <= n_max; ++c) {
      b.pair_index_[static_cast<std::size_t>(a * (n_max + 1) + c)] = p;
      b.pair_index_[static_cast<std::size_t>(c * (n_max + 1) + a)] = p;
      ++p;
    }
  }
  return b;
}

GridSpec default_basis_grid(int n_max) {
  const double turning_point = std::sqrt(2.0 * n_max + 1.0);
  const double extent = std::max(8.0, std::ceil(turning_point + 3.2));
  const double k_needed = 1.5 * std::sqrt(6.0 * n_max + 3.0);
  int points = 128;
  while (std::numbers::pi * points / (2.0 * extent) < k_needed) points *= 2;
  return GridSpec::square(extent, points);
}

int BasisSet::index_of(int n_x, int n_y) const {
  if (n_x < 0 || n_y < 0 || n_x + n_y > n_max_) return -1;
  return lookup_[static_cast<std::size_t>(n_x * (n_max_ + 1) + n_y)];
}

Eigen::MatrixXcd BasisSet::project_operator(const Wavefunction& weight) const {
  if (!(weight.grid() == grid_)) throw Error(ErrorCode::GridMismatch, "project_operator: weight not on basis grid");
  const Eigen::Map<const Eigen::MatrixXcd> w(weight.data(), grid_.n_x, grid_.n_y);
  const Eigen::MatrixXd w_re = w.real();
  const Eigen::MatrixXd w_im = w.imag();
  const Eigen::MatrixXd full_re = (pair_x_ * w_re) * pair_y_.transpose();
  const Eigen::MatrixXd full_im = (pair_x_ * w_im) * pair_y_.transpose();

  const int n = size();
  const int stride = n_max_ + 1;
  Eigen::MatrixXcd out(n, n);
  for (int k = 0; k < n; ++k) {
    const auto& sk = states_[static_cast<std::size_t>(k)];
    for (int l = 0; l < n; ++l) {
      const auto& sl = states_[static_cast<std::size_t>(l)];
      const int px = pair_index_[static_cast<std::size_t>(sk.n_x * stride + sl.n_x)];
      const int py = pair_index_[static_cast<std::size_t>(sk.n_y * stride + sl.n_y)];
      out(k, l) = cdouble(full_re(px, py), full_im(px, py));
    }
  }
  return out * quad_weight();
}

Eigen::MatrixXd BasisSet::gram() const {
  const int n = size();
  const Eigen::MatrixXd gx = eval_x_ * eval_x_.transpose() * grid_.dx();
  const Eigen::MatrixXd gy = eval_y_ * eval_y_.transpose() * grid_.dy();
  Eigen::MatrixXd g(n, n);
  for (int k = 0; k < n; ++k) {
    const auto& sk = states_[static_cast<std::size_t>(k)];
    for (int l = 0; l < n; ++l) {
      const auto& sl = states_[static_cast<std::size_t>(l)];
      g(k, l) = gx(sk.n_x, sl.n_x) * gy(sk.n_y, sl.n_y);
    }
  }
  return g;
}

double BasisSet::orthonormality_error() const {
  const Eigen::MatrixXd g = gram();
  return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

namespace {

Eigen::MatrixXcd coefficient_matrix(const CoeffVector& c, const BasisSet& basis) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.n_max() + 1, basis.n_max() + 1);
  for (int k = 0; k < basis.size(); ++k) {
    const auto& s = basis.states()[static_cast<std::size_t>(k)];
    m(s.n_x, s.n_y) = c(k);
  }
  return m;
}

Wavefunction synthesize(const Eigen::MatrixXcd& cm, const Eigen::MatrixXd& tx, const Eigen::MatrixXd& ty,
                        const GridSpec& grid) {
  Wavefunction out(grid);
  Eigen::Map<Eigen::MatrixXcd> f(out.data(), grid.n_x, grid.n_y);
  const Eigen::MatrixXd re = tx.transpose() * cm.real() * ty;
  const Eigen::MatrixXd im = tx.transpose() * cm.imag() * ty;
  f.real() = re;
  f.imag() = im;
  return out;
}

}  // namespace

Wavefunction BasisSet::evaluate(const CoeffVector& c, const GridSpec& grid) const {
  if (c.size() != size()) throw Error(ErrorCode::InvalidArgument, "evaluate: coefficient length mismatch");
  validate_grid(grid);
  if (grid == grid_) return synthesize(coefficient_matrix(c, *this), eval_x_, eval_y_, grid);
  const auto xs = axis_points(grid.x_min, grid.n_x, grid.dx());
  const auto ys = axis_points(grid.y_min, grid.n_y, grid.dy());
  return synthesize(coefficient_matrix(c, *this), hermite_table(n_max_, xs), hermite_table(n_max_, ys), grid);
}

CoeffVector grid_to_coeffs(const Wavefunction& psi, const BasisSet& basis) {
  if (!(psi.grid() == basis.grid())) throw Error(ErrorCode::GridMismatch, "grid_to_coeffs: field not on basis grid");
  const auto& g = basis.grid();
  const Eigen::Map<const Eigen::MatrixXcd> f(psi.data(), g.n_x, g.n_y);
  const Eigen::MatrixXd re = basis.eval_x() * f.real() * basis.eval_y().transpose();
  const Eigen::MatrixXd im = basis.eval_x() * f.imag() * basis.eval_y().transpose();
  CoeffVector c(basis.size());
  for (int k = 0; k < basis.size(); ++k) {
    const auto& s = basis.states()[static_cast<std::size_t>(k)];
    c(k) = cdouble(re(s.n_x, s.n_y), im(s.n_x, s.n_y)) * basis.quad_weight();
  }
  return c;
}

Wavefunction coeffs_to_grid(const CoeffVector& c, const BasisSet& basis) {
  if (c.size() != basis.size()) throw Error(ErrorCode::InvalidArgument, "coeffs_to_grid: coefficient length mismatch");
  return basis.evaluate(c, basis.grid());
}

}  // namespace ptgpe
