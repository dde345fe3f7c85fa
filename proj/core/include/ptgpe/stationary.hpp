#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "ptgpe/basis.hpp"
#include "ptgpe/potential.hpp"

namespace ptgpe {

enum class BranchLabel { Ground, ExcitedX, ExcitedY, VortexPlus, VortexMinus };

std::string_view to_string(BranchLabel label) noexcept;
/// Accepts GROUND, EXCITED_X, EXCITED_Y, VORTEX_PLUS, VORTEX_MINUS (case-insensitive).
BranchLabel parse_branch_label(std::string_view text);

inline constexpr BranchLabel kAllBranches[] = {BranchLabel::Ground, BranchLabel::ExcitedX, BranchLabel::ExcitedY,
                                               BranchLabel::VortexPlus, BranchLabel::VortexMinus};

struct StationaryState {
  CoeffVector coeffs;
  cdouble mu;
  double g = 0.0;
  PotentialSpec potential;
  double residual_norm = 0.0;
  BranchLabel branch_label = BranchLabel::Ground;
  int iterations = 0;
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 100;
  int max_halvings = 10;
  /// Reciprocal condition number below which the Newton matrix counts as singular.
  double singular_rcond = 1e-14;
};

/// The stationary problem (-lap + V_T + V_off + g|psi|^2) psi = mu psi in a fixed basis,
/// with V_off = V - V_T sampled once on the basis grid.
///
/// Newton works on the real vector z = (Re c, Im c, Re mu, Im mu) of length 2N + 2. The
/// equations are Re F, Im F, sum |c|^2 - 1 and the gauge condition Im c_p = 0.
class GpeOperator {
 public:
  GpeOperator(const BasisSet& basis, double g, PotentialSpec spec);

  const BasisSet& basis() const { return *basis_; }
  double g() const { return g_; }
  const PotentialSpec& potential() const { return spec_; }

  /// F(c, mu) followed by sum |c|^2 - 1; length N + 1.
  Eigen::VectorXcd residual(const CoeffVector& c, cdouble mu) const;

  Eigen::VectorXd real_residual(const Eigen::VectorXd& z, int gauge_index) const;
  Eigen::MatrixXd real_jacobian(const Eigen::VectorXd& z, int gauge_index) const;

  /// <h_k| w |h_l> with w = V_off + 2 g |psi|^2 and <h_k| g psi^2 |h_l>.
  std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> linearization(const CoeffVector& c) const;

  static Eigen::VectorXd pack(const CoeffVector& c, cdouble mu);
  static std::pair<CoeffVector, cdouble> unpack(const Eigen::VectorXd& z);

 private:
  const BasisSet* basis_;
  double g_;
  PotentialSpec spec_;
  Wavefunction v_off_;
};

Eigen::VectorXcd gpe_residual(const CoeffVector& c, cdouble mu, double g, const PotentialSpec& spec,
                              const BasisSet& basis);

struct Guess {
  CoeffVector coeffs;
  cdouble mu;
};

/// Linear-oscillator seeds: ground (0,0) with mu 2, first excited states with mu 4, and the
/// vortices (e_(1,0) +- i e_(0,1)) / sqrt 2.
Guess initial_guess(BranchLabel label, const BasisSet& basis);

/// Damped Newton. Throws SolverError(NoConvergence | JacobianSingular).
StationaryState solve_stationary(const Guess& guess, double g, const PotentialSpec& spec, const BasisSet& basis,
                                 const SolverOptions& options = {});
StationaryState solve_stationary(const Guess& guess, const GpeOperator& op, const SolverOptions& options = {});

/// J_phi evaluated on the basis grid.
double azimuthal_current(const CoeffVector& c, const BasisSet& basis);

/// Vortex when |J_phi| > 1e-7, otherwise the largest of the (0,0), (1,0), (0,1) amplitudes.
BranchLabel classify_label(const CoeffVector& c, const BasisSet& basis);

/// |<psi | PT psi>| with PT psi(x, y) = conj psi(-x, y); 1 for PT-symmetric states.
double pt_overlap(const CoeffVector& c, const BasisSet& basis);

/// |<a|b>| for normalized coefficient vectors.
double coefficient_overlap(const CoeffVector& a, const CoeffVector& b);

struct EnergySplit {
  double kinetic = 0.0;
  cdouble potential;
};

/// E_kin = int |grad psi|^2 (spectral), E_pot = int V |psi|^2 with the complex V.
EnergySplit energy_split(const StationaryState& state, const BasisSet& basis);

/// Multiplies by a global phase so the largest-modulus coefficient is real and positive.
void fix_gauge(CoeffVector& c);

}  // namespace ptgpe
