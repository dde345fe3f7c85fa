#include "ptgpe/stationary.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>

#include "ptgpe/error.hpp"
#include "ptgpe/observables.hpp"
#include "ptgpe/spectral.hpp"

namespace ptgpe {

std::string_view to_string(BranchLabel label) noexcept {
  switch (label) {
    case BranchLabel::Ground: return "GROUND";
    case BranchLabel::ExcitedX: return "EXCITED_X";
    case BranchLabel::ExcitedY: return "EXCITED_Y";
    case BranchLabel::VortexPlus: return "VORTEX_PLUS";
    case BranchLabel::VortexMinus: return "VORTEX_MINUS";
  }
  return "?";
}

BranchLabel parse_branch_label(std::string_view text) {
  std::string up(text);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  for (auto b : kAllBranches)
    if (up == to_string(b)) return b;
  throw Error(ErrorCode::Config, "unknown branch label '" + std::string(text) + "'");
}

GpeOperator::GpeOperator(const BasisSet& basis, double g, PotentialSpec spec)
    : basis_(&basis), g_(g), spec_(std::move(spec)) {
  validate_potential(spec_);
  v_off_ = potential_offset(spec_, basis.grid());
}

Eigen::VectorXcd GpeOperator::residual(const CoeffVector& c, cdouble mu) const {
  const int n = basis_->size();
  if (c.size() != n) throw Error(ErrorCode::InvalidArgument, "gpe_residual: coefficient length mismatch");
  Wavefunction w = coeffs_to_grid(c, *basis_);
  for (std::size_t k = 0; k < w.size(); ++k) w[k] *= v_off_[k] + g_ * std::norm(w[k]);
  const CoeffVector nonlinear = grid_to_coeffs(w, *basis_);
  Eigen::VectorXcd out(n + 1);
  out.head(n) = (basis_->energies().cast<cdouble>().array() - mu) * c.array() + nonlinear.array();
  out(n) = c.squaredNorm() - 1.0;
  return out;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> GpeOperator::linearization(const CoeffVector& c) const {
  const Wavefunction psi = coeffs_to_grid(c, *basis_);
  Wavefunction diag(psi.grid()), pair(psi.grid());
  for (std::size_t k = 0; k < psi.size(); ++k) {
    diag[k] = v_off_[k] + 2.0 * g_ * std::norm(psi[k]);
    pair[k] = g_ * psi[k] * psi[k];
  }
  return {basis_->project_operator(diag), basis_->project_operator(pair)};
}

Eigen::VectorXd GpeOperator::pack(const CoeffVector& c, cdouble mu) {
  const auto n = c.size();
  Eigen::VectorXd z(2 * n + 2);
  z.head(n) = c.real();
  z.segment(n, n) = c.imag();
  z(2 * n) = mu.real();
  z(2 * n + 1) = mu.imag();
  return z;
}

std::pair<CoeffVector, cdouble> GpeOperator::unpack(const Eigen::VectorXd& z) {
  const auto n = (z.size() - 2) / 2;
  CoeffVector c(n);
  c.real() = z.head(n);
  c.imag() = z.segment(n, n);
  return {c, cdouble(z(2 * n), z(2 * n + 1))};
}

Eigen::VectorXd GpeOperator::real_residual(const Eigen::VectorXd& z, int gauge_index) const {
  const auto [c, mu] = unpack(z);
  const auto n = c.size();
  const Eigen::VectorXcd r = residual(c, mu);
  Eigen::VectorXd out(2 * n + 2);
  out.head(n) = r.head(n).real();
  out.segment(n, n) = r.head(n).imag();
  out(2 * n) = r(n).real();
  out(2 * n + 1) = c(gauge_index).imag();
  return out;
}

Eigen::MatrixXd GpeOperator::real_jacobian(const Eigen::VectorXd& z, int gauge_index) const {
  const auto [c, mu] = unpack(z);
  const auto n = c.size();
  auto [p, q] = linearization(c);
  p.diagonal().array() += basis_->energies().cast<cdouble>().array() - mu;
  // dF = P dc + Q conj(dc) - c dmu
  const Eigen::MatrixXcd sum = p + q;
  const Eigen::MatrixXcd diff = p - q;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2 * n + 2, 2 * n + 2);
  jac.topLeftCorner(n, n) = sum.real();
  jac.block(0, n, n, n) = -diff.imag();
  jac.block(n, 0, n, n) = sum.imag();
  jac.block(n, n, n, n) = diff.real();
  jac.block(0, 2 * n, n, 1) = -c.real();
  jac.block(n, 2 * n, n, 1) = -c.imag();
  jac.block(0, 2 * n + 1, n, 1) = c.imag();
  jac.block(n, 2 * n + 1, n, 1) = -c.real();
  jac.block(2 * n, 0, 1, n) = 2.0 * c.real().transpose();
  jac.block(2 * n, n, 1, n) = 2.0 * c.imag().transpose();
  jac(2 * n + 1, n + gauge_index) = 1.0;
  return jac;
}

Eigen::VectorXcd gpe_residual(const CoeffVector& c, cdouble mu, double g, const PotentialSpec& spec,
                              const BasisSet& basis) {
  return GpeOperator(basis, g, spec).residual(c, mu);
}

Guess initial_guess(BranchLabel label, const BasisSet& basis) {
  if (basis.n_max() < 1 && label != BranchLabel::Ground)
    throw Error(ErrorCode::InvalidArgument, "initial_guess: excited seeds need n_max >= 1");
  CoeffVector c = CoeffVector::Zero(basis.size());
  const double s = 1.0 / std::sqrt(2.0);
  switch (label) {
    case BranchLabel::Ground: c(basis.index_of(0, 0)) = 1.0; return {c, 2.0};
    case BranchLabel::ExcitedX: c(basis.index_of(1, 0)) = 1.0; break;
    case BranchLabel::ExcitedY: c(basis.index_of(0, 1)) = 1.0; break;
    case BranchLabel::VortexPlus:
      c(basis.index_of(1, 0)) = s;
      c(basis.index_of(0, 1)) = cdouble(0.0, s);
      break;
    case BranchLabel::VortexMinus:
      c(basis.index_of(1, 0)) = s;
      c(basis.index_of(0, 1)) = cdouble(0.0, -s);
      break;
  }
  return {c, 4.0};
}

void fix_gauge(CoeffVector& c) {
  Eigen::Index p = 0;
  c.cwiseAbs().maxCoeff(&p);
  const double a = std::abs(c(p));
  if (a > 0.0) c *= std::conj(c(p)) / a;
}

StationaryState solve_stationary(const Guess& guess, double g, const PotentialSpec& spec, const BasisSet& basis,
                                 const SolverOptions& options) {
  return solve_stationary(guess, GpeOperator(basis, g, spec), options);
}

StationaryState solve_stationary(const Guess& guess, const GpeOperator& op, const SolverOptions& options) {
  if (options.tol <= 0.0 || options.max_iter < 1) throw Error(ErrorCode::InvalidArgument, "solve_stationary: bad options");
  const auto& basis = op.basis();
  if (guess.coeffs.size() != basis.size())
    throw Error(ErrorCode::InvalidArgument, "solve_stationary: guess length mismatch");
  const double n2 = guess.coeffs.squaredNorm();
  if (!(std::abs(n2 - 1.0) <= 0.21)) throw Error(ErrorCode::InvalidArgument, "solve_stationary: guess not normalized");

  CoeffVector c0 = guess.coeffs;
  fix_gauge(c0);
  Eigen::Index gauge = 0;
  c0.cwiseAbs().maxCoeff(&gauge);
  const int p = static_cast<int>(gauge);

  Eigen::VectorXd z = GpeOperator::pack(c0, guess.mu);
  Eigen::VectorXd r = op.real_residual(z, p);
  double rnorm = r.norm();
  int it = 0;
  while (rnorm >= options.tol) {
    if (it == options.max_iter) {
      std::ostringstream os;
      os << "Newton did not converge in " << it << " iterations (residual " << rnorm << ")";
      throw SolverError(ErrorCode::NoConvergence, os.str(), rnorm, it);
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(op.real_jacobian(z, p));
    const double rc = lu.rcond();
    if (!(rc > options.singular_rcond)) {
      std::ostringstream os;
      os << "Newton matrix singular (rcond " << rc << ") at iteration " << it;
      throw SolverError(ErrorCode::JacobianSingular, os.str(), rnorm, it);
    }
    const Eigen::VectorXd step = lu.solve(-r);
    double t = 1.0;
    Eigen::VectorXd z_try = z + step;
    Eigen::VectorXd r_try = op.real_residual(z_try, p);
    for (int h = 0; h < options.max_halvings && !(r_try.norm() < rnorm); ++h) {
      t *= 0.5;
      z_try = z + t * step;
      r_try = op.real_residual(z_try, p);
    }
    if (!r_try.allFinite()) throw SolverError(ErrorCode::NoConvergence, "Newton produced non-finite values", rnorm, it);
    z = std::move(z_try);
    r = std::move(r_try);
    rnorm = r.norm();
    ++it;
  }

  auto [c, mu] = GpeOperator::unpack(z);
  fix_gauge(c);
  StationaryState s;
  s.residual_norm = op.residual(c, mu).norm();
  s.branch_label = classify_label(c, basis);
  s.coeffs = std::move(c);
  s.mu = mu;
  s.g = op.g();
  s.potential = op.potential();
  s.iterations = it;
  return s;
}

double azimuthal_current(const CoeffVector& c, const BasisSet& basis) {
  return azimuthal_current(coeffs_to_grid(c, basis));
}

BranchLabel classify_label(const CoeffVector& c, const BasisSet& basis) {
  const double j = azimuthal_current(c, basis);
  if (std::abs(j) > 1e-7) return j > 0.0 ? BranchLabel::VortexPlus : BranchLabel::VortexMinus;
  const double a00 = std::abs(c(basis.index_of(0, 0)));
  if (basis.n_max() < 1) return BranchLabel::Ground;
  const double a10 = std::abs(c(basis.index_of(1, 0)));
  const double a01 = std::abs(c(basis.index_of(0, 1)));
  if (a00 >= a10 && a00 >= a01) return BranchLabel::Ground;
  return a10 >= a01 ? BranchLabel::ExcitedX : BranchLabel::ExcitedY;
}

double pt_overlap(const CoeffVector& c, const BasisSet& basis) {
  cdouble sum{};
  for (int k = 0; k < basis.size(); ++k) {
    const cdouble cc = std::conj(c(k));
    sum += (basis.states()[static_cast<std::size_t>(k)].n_x % 2 ? -1.0 : 1.0) * cc * cc;
  }
  return std::abs(sum) / c.squaredNorm();
}

double coefficient_overlap(const CoeffVector& a, const CoeffVector& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

EnergySplit energy_split(const StationaryState& state, const BasisSet& basis) {
  const Wavefunction psi = coeffs_to_grid(state.coeffs, basis);
  const auto [dx, dy] = gradient(psi);
  const Wavefunction v = sample_potential(state.potential, basis.grid());
  EnergySplit e;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    e.kinetic += std::norm(dx[k]) + std::norm(dy[k]);
    e.potential += v[k] * std::norm(psi[k]);
  }
  e.kinetic *= basis.quad_weight();
  e.potential *= basis.quad_weight();
  return e;
}

}  // namespace ptgpe
