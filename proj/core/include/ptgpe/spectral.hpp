#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "ptgpe/grid.hpp"

namespace ptgpe {

/// In-place 2D complex FFT on one grid, backed by FFTW. Each instance owns its plans
/// and scratch buffer; instances may be used concurrently from different threads.
class Fft2d {
 public:
  explicit Fft2d(const GridSpec& grid);
  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;
  Fft2d(Fft2d&&) noexcept;
  Fft2d& operator=(Fft2d&&) noexcept;

  const GridSpec& grid() const { return grid_; }

  /// Unnormalized forward transform.
  void forward(cdouble* data) const;
  /// Backward transform including the 1/N factor.
  void backward(cdouble* data) const;

  /// Angular wavenumbers in FFTW ordering.
  const std::vector<double>& kx() const { return kx_; }
  const std::vector<double>& ky() const { return ky_; }

 private:
  struct Plans;
  GridSpec grid_;
  std::unique_ptr<Plans> plans_;
  std::vector<double> kx_, ky_;
};

/// Angular wavenumbers 2*pi*m/L for m in FFTW order (0..n/2-1, -n/2..-1).
std::vector<double> wavenumbers(int n, double length);

/// Spectral partial derivatives of a periodic field.
std::pair<Wavefunction, Wavefunction> gradient(const Wavefunction& f, const Fft2d& fft);
std::pair<Wavefunction, Wavefunction> gradient(const Wavefunction& f);

RealField divergence(const RealField& fx, const RealField& fy, const Fft2d& fft);

/// Trigonometric interpolation of a sampled periodic field at arbitrary points.
class FourierInterpolator {
 public:
  explicit FourierInterpolator(const Wavefunction& f);

  cdouble value(double x, double y) const;

  struct Jet {
    cdouble value, d_x, d_y;
  };
  Jet jet(double x, double y) const;

 private:
  GridSpec grid_;
  std::vector<cdouble> coeffs_;
  std::vector<double> kx_, ky_;
};

}  // namespace ptgpe
