#include "ptgpe/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "ptgpe/error.hpp"

namespace ptgpe {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cdouble* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct Fft2d::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

Fft2d::Fft2d(const GridSpec& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  validate_grid(grid);
  std::vector<cdouble> scratch(grid.size());
  {
    std::lock_guard lock(planner_mutex());
    plans_->forward = fftw_plan_dft_2d(grid.n_y, grid.n_x, as_fftw(scratch.data()),
                                       as_fftw(scratch.data()), FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_->backward = fftw_plan_dft_2d(grid.n_y, grid.n_x, as_fftw(scratch.data()),
                                        as_fftw(scratch.data()), FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  if (!plans_->forward || !plans_->backward) throw Error(ErrorCode::InvalidArgument, "FFTW planning failed");
  kx_ = wavenumbers(grid.n_x, grid.x_max - grid.x_min);
  ky_ = wavenumbers(grid.n_y, grid.y_max - grid.y_min);
}

Fft2d::~Fft2d() {
  if (!plans_) return;
  std::lock_guard lock(planner_mutex());
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
  if (plans_->backward) fftw_destroy_plan(plans_->backward);
}

Fft2d::Fft2d(Fft2d&&) noexcept = default;
Fft2d& Fft2d::operator=(Fft2d&&) noexcept = default;

// Plans are created with FFTW_UNALIGNED, so any buffer of the right size may be passed.
void Fft2d::forward(cdouble* data) const {
  fftw_execute_dft(plans_->forward, as_fftw(data), as_fftw(data));
}

void Fft2d::backward(cdouble* data) const {
  fftw_execute_dft(plans_->backward, as_fftw(data), as_fftw(data));
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t k = 0; k < grid_.size(); ++k) data[k] *= scale;
}

std::vector<double> wavenumbers(int n, double length) {
  std::vector<double> k(n);
  const double base = 2.0 * std::numbers::pi / length;
  for (int m = 0; m < n; ++m) k[m] = base * (m < n / 2 ? m : m - n);
  return k;
}

std::pair<Wavefunction, Wavefunction> gradient(const Wavefunction& f, const Fft2d& fft) {
  const auto& g = f.grid();
  if (!(g == fft.grid())) throw Error(ErrorCode::GridMismatch, "gradient: FFT grid differs");
  Wavefunction spec = f;
  fft.forward(spec.data());
  Wavefunction dfx(g), dfy(g);
  const cdouble I{0.0, 1.0};
  for (int j = 0; j < g.n_y; ++j) {
    for (int i = 0; i < g.n_x; ++i) {
      // The Nyquist mode has no well-defined odd derivative; drop it.
      const double kx = (i == g.n_x / 2) ? 0.0 : fft.kx()[i];
      const double ky = (j == g.n_y / 2) ? 0.0 : fft.ky()[j];
      dfx(i, j) = I * kx * spec(i, j);
      dfy(i, j) = I * ky * spec(i, j);
    }
  }
  fft.backward(dfx.data());
  fft.backward(dfy.data());
  return {std::move(dfx), std::move(dfy)};
}

std::pair<Wavefunction, Wavefunction> gradient(const Wavefunction& f) {
  Fft2d fft(f.grid());
  return gradient(f, fft);
}

RealField divergence(const RealField& fx, const RealField& fy, const Fft2d& fft) {
  const auto& g = fx.grid();
  Wavefunction cx(g), cy(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    cx[k] = fx[k];
    cy[k] = fy[k];
  }
  auto [dxx, dxy] = gradient(cx, fft);
  auto [dyx, dyy] = gradient(cy, fft);
  RealField out(g);
  for (std::size_t k = 0; k < g.size(); ++k) out[k] = dxx[k].real() + dyy[k].real();
  return out;
}

FourierInterpolator::FourierInterpolator(const Wavefunction& f)
    : grid_(f.grid()), coeffs_(f.values().begin(), f.values().end()) {
  Fft2d fft(grid_);
  fft.forward(coeffs_.data());
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (auto& c : coeffs_) c *= scale;
  kx_ = fft.kx();
  ky_ = fft.ky();
  // Nyquist modes dropped: the interpolant must be a smooth trigonometric polynomial.
  for (int j = 0; j < grid_.n_y; ++j) coeffs_[grid_.index(grid_.n_x / 2, j)] = 0.0;
  for (int i = 0; i < grid_.n_x; ++i) coeffs_[grid_.index(i, grid_.n_y / 2)] = 0.0;
}

cdouble FourierInterpolator::value(double x, double y) const { return jet(x, y).value; }

FourierInterpolator::Jet FourierInterpolator::jet(double x, double y) const {
  const double sx = x - grid_.x_min;
  const double sy = y - grid_.y_min;
  std::vector<cdouble> ex(grid_.n_x);
  for (int i = 0; i < grid_.n_x; ++i) ex[i] = std::polar(1.0, kx_[i] * sx);
  const cdouble I{0.0, 1.0};
  cdouble v{}, vx{}, vy{};
  for (int j = 0; j < grid_.n_y; ++j) {
    cdouble row{}, row_x{};
    const cdouble* c = coeffs_.data() + grid_.index(0, j);
    for (int i = 0; i < grid_.n_x; ++i) {
      const cdouble t = c[i] * ex[i];
      row += t;
      row_x += kx_[i] * t;
    }
    const cdouble ey = std::polar(1.0, ky_[j] * sy);
    v += row * ey;
    vx += I * row_x * ey;
    vy += I * ky_[j] * row * ey;
  }
  return {v, vx, vy};
}

}  // namespace ptgpe
