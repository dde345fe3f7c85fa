#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptgpe/continuation.hpp"
#include "ptgpe/stationary.hpp"

namespace ptgpe {

inline constexpr double kStabilityTol = 1e-6;

struct BdgSpectrum {
  /// Every eigenfrequency, sorted by real part then imaginary part.
  std::vector<cdouble> omegas;
  /// Largest Im omega over the spectrum, clamped at 0.
  double max_imag = 0.0;
  bool stable = true;
  int n_unstable = 0;
  std::string state_ref;
};

/// [[A, B], [-conj B, -conj A]] with A = E - mu + <V_off + 2g|psi|^2>, B = <g psi^2>.
/// The basis functions are real, so conjugating the operators is entrywise conjugation.
/// Rejects states with residual_norm > 1e-8 or |Im mu| > 1e-8.
Eigen::MatrixXcd build_bdg_matrix(const StationaryState& state, const BasisSet& basis);

/// Dense non-Hermitian eigensolve. Throws Error(EigenSolver) on failure.
BdgSpectrum solve_bdg(const Eigen::MatrixXcd& matrix, double stability_tol = kStabilityTol);

/// For each omega, the largest distance from -omega, conj omega and -conj omega to the spectrum.
double quartet_defect(const std::vector<cdouble>& omegas);

/// Smallest |omega|.
double zero_mode_distance(const std::vector<cdouble>& omegas);

struct StabilityPoint {
  double parameter = 0.0;
  std::optional<BdgSpectrum> spectrum;
  std::string error;
};

/// One spectrum per branch sample; failures are reported per point. Points are independent and
/// distributed over `threads` workers; the result order follows the branch.
std::vector<StabilityPoint> stability_sweep(const SpectrumBranch& branch, const BasisSet& basis,
                                            double stability_tol = kStabilityTol, int threads = 1);

}  // namespace ptgpe
