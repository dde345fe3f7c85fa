#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "ptgpe/grid.hpp"

namespace ptgpe {

enum class PotentialKind { A, B, C, PtBrokenC, Custom };

std::string_view to_string(PotentialKind kind) noexcept;
/// Accepts "A", "B", "C", "PT_BROKEN_C", "CUSTOM" (case-insensitive). Throws Error(Config).
PotentialKind parse_potential_kind(std::string_view text);

/// Gain-loss potential description. The full complex potential is V = V_T + i*gamma*V_I.
///
/// A:            V_I = x exp(-r^2)
/// B:            V_I = x^3 exp(-r^2)
/// C:            V_I = exp(-(x-d)^2 - y^2) - exp(-(x+d)^2 - y^2)
/// PtBrokenC:    V_I = gain_factor exp(-(x-d)^2 - y^2) - exp(-(x+d)^2 - y^2)
/// Custom:       `table` holds the complete complex V (trap included) on its own grid;
///               gamma and d are ignored.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::A;
  double d = 0.0;
  double gamma = 0.0;
  double gain_factor = 1.0;
  std::shared_ptr<const Wavefunction> table;

  static PotentialSpec pt_broken(double d, double gamma) {
    return PotentialSpec{PotentialKind::PtBrokenC, d, gamma, 1.2, nullptr};
  }
  static PotentialSpec custom(Wavefunction values) {
    PotentialSpec s;
    s.kind = PotentialKind::Custom;
    s.table = std::make_shared<const Wavefunction>(std::move(values));
    return s;
  }
};

/// Empty when usable, otherwise a description of the first problem.
std::string potential_violation(const PotentialSpec& spec);
void validate_potential(const PotentialSpec& spec);

inline double evaluate_trap(double x, double y) { return x * x + y * y; }

/// V_I(x, y) without the gamma factor. For Custom, Im V of the table.
double evaluate_imaginary(const PotentialSpec& spec, double x, double y);

/// V(x, y) = V_T + i*gamma*V_I, or the table value for Custom.
/// Custom tables are bilinearly interpolated; outside the table the trap alone is returned.
cdouble complex_potential(const PotentialSpec& spec, double x, double y);

/// V - V_T on every grid point: the part of the potential not diagonal in the oscillator basis.
Wavefunction potential_offset(const PotentialSpec& spec, const GridSpec& grid);

/// Complex V on every grid point.
Wavefunction sample_potential(const PotentialSpec& spec, const GridSpec& grid);

/// max over grid points of |V(-x, y) - conj V(x, y)| < tol.
bool is_pt_symmetric(const PotentialSpec& spec, const GridSpec& grid, double tol);

/// Zero potential (no trap, no gain-loss) for free propagation.
PotentialSpec free_space(const GridSpec& grid);

/// The broken variant exactly as typeset, with both Gaussians centred at (d, 0).
PotentialSpec literal_pt_broken(double d, double gamma, const GridSpec& grid);

}  // namespace ptgpe
