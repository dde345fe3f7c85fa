#include "ptgpe/observables.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ptgpe/error.hpp"

namespace ptgpe {

RealField density_field(const Wavefunction& psi) {
  RealField rho(psi.grid());
  for (std::size_t k = 0; k < psi.size(); ++k) rho[k] = std::norm(psi[k]);
  return rho;
}

RealField phase_field(const Wavefunction& psi) {
  RealField s(psi.grid());
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const double a = std::arg(psi[k]);
    s[k] = (a == -std::numbers::pi) ? std::numbers::pi : a;
  }
  return s;
}

CurrentField current_density(const Wavefunction& psi, const Fft2d& fft) {
  const auto [dx, dy] = gradient(psi, fft);
  CurrentField j{RealField(psi.grid()), RealField(psi.grid())};
  const cdouble I{0.0, 1.0};
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const cdouble p = psi[k];
    // grad psi* is the conjugate of grad psi for the Nyquist-free spectral derivative.
    const cdouble jx = I * (p * std::conj(dx[k]) - std::conj(p) * dx[k]);
    const cdouble jy = I * (p * std::conj(dy[k]) - std::conj(p) * dy[k]);
    j.jx[k] = jx.real();
    j.jy[k] = jy.real();
  }
  return j;
}

CurrentField current_density(const Wavefunction& psi) {
  Fft2d fft(psi.grid());
  return current_density(psi, fft);
}

double azimuthal_current(const CurrentField& j) {
  const auto& g = j.grid();
  const double r_skip = 0.5 * std::min(g.dx(), g.dy());
  double sum = 0.0;
  for (int jj = 0; jj < g.n_y; ++jj) {
    const double y = g.y(jj);
    for (int i = 0; i < g.n_x; ++i) {
      const double x = g.x(i);
      const double r = std::hypot(x, y);
      if (r < r_skip) continue;
      sum += (-j.jx(i, jj) * y + j.jy(i, jj) * x) / r;
    }
  }
  return sum * g.cell_area();
}

double azimuthal_current(const Wavefunction& psi) { return azimuthal_current(current_density(psi)); }

int winding_number(const Wavefunction& psi, double cx, double cy, double radius, int samples) {
  if (radius <= 0.0 || samples < 8) throw Error(ErrorCode::InvalidArgument, "winding_number: bad loop");
  const auto& g = psi.grid();
  if (!g.contains(cx - radius, cy - radius) || !g.contains(cx + radius, cy + radius))
    throw Error(ErrorCode::InvalidArgument, "winding_number: loop leaves the grid");
  const FourierInterpolator interp(psi);
  double total = 0.0;
  cdouble prev = interp.value(cx + radius, cy);
  const cdouble first = prev;
  for (int s = 1; s <= samples; ++s) {
    const cdouble cur = s == samples ? first : [&] {
      const double t = 2.0 * std::numbers::pi * s / samples;
      return interp.value(cx + radius * std::cos(t), cy + radius * std::sin(t));
    }();
    if (std::abs(cur) < 1e-6 || std::abs(prev) < 1e-6) {
      std::ostringstream os;
      os << "winding_number: |psi| < 1e-6 on the loop of radius " << radius;
      throw Error(ErrorCode::AmplitudeTooSmall, os.str());
    }
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

RealField continuity_residual(const Wavefunction& psi, const PotentialSpec& spec) {
  const auto& g = psi.grid();
  Fft2d fft(g);
  const auto j = current_density(psi, fft);
  RealField out = divergence(j.jx, j.jy, fft);
  const Wavefunction v = sample_potential(spec, g);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= 2.0 * std::norm(psi[k]) * v[k].imag();
  return out;
}

double max_abs(const RealField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace ptgpe
