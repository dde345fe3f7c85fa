#pragma once

#include "ptgpe/grid.hpp"
#include "ptgpe/potential.hpp"
#include "ptgpe/spectral.hpp"

namespace ptgpe {

struct CurrentField {
  RealField jx, jy;
  const GridSpec& grid() const { return jx.grid(); }
};

/// |psi|^2.
RealField density_field(const Wavefunction& psi);

/// arg psi in (-pi, pi].
RealField phase_field(const Wavefunction& psi);

/// j = i (psi grad psi* - psi* grad psi) = 2 Im(psi* grad psi), spectral derivatives.
CurrentField current_density(const Wavefunction& psi, const Fft2d& fft);
CurrentField current_density(const Wavefunction& psi);

/// Quadrature of j . e_phi over the grid. Points closer to the origin than half a cell are skipped.
double azimuthal_current(const CurrentField& j);
double azimuthal_current(const Wavefunction& psi);

/// Integer winding of arg psi around a circle, sampled at `samples` points with
/// trigonometric interpolation. Throws Error(AmplitudeTooSmall) if |psi| < 1e-6 on the loop.
int winding_number(const Wavefunction& psi, double cx, double cy, double radius, int samples = 256);

/// div j - 2 rho Im V. Vanishes for stationary states with real mu.
RealField continuity_residual(const Wavefunction& psi, const PotentialSpec& spec);

double max_abs(const RealField& f);

}  // namespace ptgpe
