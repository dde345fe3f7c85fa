#include "ptgpe/bdg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ptgpe/error.hpp"
#include "ptgpe/parallel.hpp"

namespace ptgpe {

Eigen::MatrixXcd build_bdg_matrix(const StationaryState& state, const BasisSet& basis) {
  if (!(state.residual_norm <= 1e-8)) {
    std::ostringstream os;
    os << "build_bdg_matrix: state not converged (residual " << state.residual_norm << ")";
    throw Error(ErrorCode::NotConverged, os.str());
  }
  if (std::abs(state.mu.imag()) > 1e-8) throw Error(ErrorCode::NotConverged, "build_bdg_matrix: complex mu");
  if (state.coeffs.size() != basis.size()) throw Error(ErrorCode::InvalidArgument, "build_bdg_matrix: size mismatch");

  const GpeOperator op(basis, state.g, state.potential);
  auto [a, b] = op.linearization(state.coeffs);
  a.diagonal().array() += basis.energies().cast<cdouble>().array() - state.mu.real();
  const auto n = basis.size();
  Eigen::MatrixXcd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = a;
  m.topRightCorner(n, n) = b;
  m.bottomLeftCorner(n, n) = -b.conjugate();
  m.bottomRightCorner(n, n) = -a.conjugate();
  return m;
}

BdgSpectrum solve_bdg(const Eigen::MatrixXcd& matrix, double stability_tol) {
  if (matrix.rows() != matrix.cols() || matrix.rows() % 2 != 0)
    throw Error(ErrorCode::InvalidArgument, "solve_bdg: matrix must be square with even dimension");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(matrix, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::EigenSolver, "solve_bdg: eigensolver failed");
  BdgSpectrum s;
  const auto& ev = solver.eigenvalues();
  s.omegas.assign(ev.data(), ev.data() + ev.size());
  std::sort(s.omegas.begin(), s.omegas.end(), [](cdouble l, cdouble r) {
    return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
  });
  for (const auto w : s.omegas) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
      throw Error(ErrorCode::EigenSolver, "solve_bdg: non-finite eigenvalue");
    s.max_imag = std::max(s.max_imag, w.imag());
    if (w.imag() > stability_tol) ++s.n_unstable;
  }
  s.stable = s.max_imag < stability_tol;
  return s;
}

double quartet_defect(const std::vector<cdouble>& omegas) {
  auto nearest = [&](cdouble target) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto w : omegas) best = std::min(best, std::abs(w - target));
    return best;
  };
  double worst = 0.0;
  for (const auto w : omegas) worst = std::max({worst, nearest(-w), nearest(std::conj(w)), nearest(-std::conj(w))});
  return worst;
}

double zero_mode_distance(const std::vector<cdouble>& omegas) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto w : omegas) best = std::min(best, std::abs(w));
  return best;
}

std::vector<StabilityPoint> stability_sweep(const SpectrumBranch& branch, const BasisSet& basis, double stability_tol,
                                            int threads) {
  std::vector<StabilityPoint> out(branch.samples.size());
  parallel_for(out.size(), threads, [&](std::size_t i) {
    const auto& sample = branch.samples[i];
    out[i].parameter = sample.parameter;
    try {
      out[i].spectrum = solve_bdg(build_bdg_matrix(sample.state, basis), stability_tol);
      std::ostringstream ref;
      ref << to_string(branch.label) << "@" << to_string(branch.parameter) << "=" << sample.parameter;
      out[i].spectrum->state_ref = ref.str();
    } catch (const Error& e) {
      out[i].error = std::string(to_string(e.code())) + ": " + e.what();
    }
  });
  return out;
}

}  // namespace ptgpe
