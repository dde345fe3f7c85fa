#include "ptgpe/grid.hpp"

#include <cmath>
#include <sstream>

#include "ptgpe/error.hpp"

namespace ptgpe {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::GridMismatch: return "GRID_MISMATCH";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::JacobianSingular: return "JACOBIAN_SINGULAR";
    case ErrorCode::NotConverged: return "NOT_CONVERGED";
    case ErrorCode::NotTerminated: return "NOT_TERMINATED";
    case ErrorCode::AmplitudeTooSmall: return "AMPLITUDE_TOO_SMALL";
    case ErrorCode::LostVortex: return "LOST_VORTEX";
    case ErrorCode::BlowUp: return "BLOW_UP";
    case ErrorCode::EigenSolver: return "EIGENSOLVER_FAILURE";
    case ErrorCode::Config: return "CONFIG";
    case ErrorCode::Io: return "IO";
  }
  return "UNKNOWN";
}

std::string grid_violation(const GridSpec& g) {
  std::ostringstream os;
  if (!is_power_of_two(g.n_x) || !is_power_of_two(g.n_y)) {
    os << "grid point counts must be powers of two (got " << g.n_x << "x" << g.n_y << ")";
  } else if (!(g.x_max > g.x_min) || !(g.y_max > g.y_min)) {
    os << "grid extents must be increasing";
  } else if (std::abs(g.x_min + g.x_max) > 1e-12 * g.x_max ||
             std::abs(g.y_min + g.y_max) > 1e-12 * g.y_max) {
    os << "grid must be symmetric about the origin";
  }
  return os.str();
}

void validate_grid(const GridSpec& grid) {
  if (auto msg = grid_violation(grid); !msg.empty()) throw Error(ErrorCode::InvalidArgument, msg);
}

double norm_squared(const Wavefunction& psi) {
  double sum = 0.0;
  for (const auto& v : psi.values()) sum += std::norm(v);
  return sum * psi.grid().cell_area();
}

cdouble inner_product(const Wavefunction& a, const Wavefunction& b) {
  if (!(a.grid() == b.grid())) throw Error(ErrorCode::GridMismatch, "inner_product: grids differ");
  cdouble sum{0.0, 0.0};
  for (std::size_t k = 0; k < a.size(); ++k) sum += std::conj(a[k]) * b[k];
  return sum * a.grid().cell_area();
}

double fidelity(const Wavefunction& a, const Wavefunction& b) {
  const double na = norm_squared(a);
  const double nb = norm_squared(b);
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return std::abs(inner_product(a, b)) / std::sqrt(na * nb);
}

double normalize(Wavefunction& psi) {
  const double n = std::sqrt(norm_squared(psi));
  if (n > 0.0)
    for (auto& v : psi.values()) v /= n;
  return n;
}

double integrate(const RealField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum * f.grid().cell_area();
}

}  // namespace ptgpe
