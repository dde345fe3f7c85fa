#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ptgpe/potential.hpp"
#include "ptgpe/spectral.hpp"

namespace ptgpe {

/// [-5, 5]^2 with 128 points per axis.
GridSpec default_dynamics_grid();
/// [-10, 10]^2 with 256 points per axis.
GridSpec extended_dynamics_grid();

struct PropagationConfig {
  double dt = 1e-3;
  long n_steps = 1000;
  double noise_amplitude = 0.0;
  long record_every = 1;
  GridSpec grid = default_dynamics_grid();
  std::uint64_t seed = 0;
  /// Multiplies the field by a smooth edge mask after every step. Off by default.
  bool absorbing = false;
  /// Locate the vortex core at every recorded step.
  bool track = false;
};

/// Empty when usable. n_steps = 0 is allowed and yields the initial state.
std::string propagation_violation(const PropagationConfig& config);

using Point2 = std::array<double, 2>;

struct Trajectory {
  std::vector<double> times;
  std::vector<Point2> centers;
  std::vector<double> norms;
  std::vector<double> overlaps;
  /// Set when tracking stopped the run early, e.g. "LOST_VORTEX".
  std::optional<std::string> truncation;
  long steps_taken = 0;
};

/// Symmetric splitting for i psi_t = (-lap + V + g|psi|^2) psi:
/// half kinetic step exp(-i k^2 dt/2), full potential step, half kinetic step.
/// The potential step is integrated exactly: with rho(t) = rho_0 exp(2 Im V t) the
/// phase is Re V dt + g rho_0 (exp(2 Im V dt) - 1) / (2 Im V).
class SplitStepPropagator {
 public:
  SplitStepPropagator(const GridSpec& grid, double dt, double g, const PotentialSpec& spec, bool absorbing = false);

  void step(Wavefunction& psi) const;
  const Fft2d& fft() const { return fft_; }
  double dt() const { return dt_; }

 private:
  Fft2d fft_;
  double dt_;
  double g_;
  std::vector<cdouble> half_kinetic_;
  std::vector<double> v_re_, v_im_;
  std::vector<double> mask_;
};

Wavefunction split_step(const Wavefunction& psi, double dt, double g, const PotentialSpec& spec);

struct EvolveResult {
  Trajectory trajectory;
  Wavefunction final_state;
};

/// Called every `every` steps (and at step 0) with the current field.
struct SnapshotHook {
  long every = 0;
  std::function<void(long step, const Wavefunction&)> sink;
};

/// Adds seeded uniform complex noise (|delta| ~ U[0, a], arg ~ U[0, 2 pi)) to psi0, renormalizes,
/// and propagates. Overlaps are |<psi0|psi(t)>| / (|psi0| |psi(t)|) against the unperturbed psi0.
/// Throws BlowUpError on a non-finite norm. A lost vortex truncates the trajectory.
EvolveResult evolve(const Wavefunction& psi0, const PropagationConfig& config, double g, const PotentialSpec& spec,
                    const SnapshotHook& snapshots = {});

void add_noise(Wavefunction& psi, double amplitude, std::uint64_t seed);

/// [(x - x0) + i(y - y0)] exp(-r^2/2), normalized.
Wavefunction offcenter_vortex(double x0, double y0, const GridSpec& grid);

/// Sub-cell position of the vortex core. The search covers a disk of radius `search_radius`
/// around `previous`, or without `previous` a disk of the rms radius around the density centroid.
/// The 3x3 least-squares quadratic fit at the density minimum seeds a Newton solve of psi = 0 on the
/// trigonometric interpolant.
/// Throws Error(LostVortex) when the minimum exceeds 0.3 x the disk mean density, or when the disk mean
/// falls below 0.1 x the density-weighted cloud mean.
Point2 track_vortex(const Wavefunction& psi, std::optional<Point2> previous = std::nullopt,
                    double search_radius = 1.0);

struct PrecessionOptions {
  double g = 1.0;
  double dt = 1e-3;
  GridSpec grid = default_dynamics_grid();
  long record_every = 1;
};

/// Off-centre vortex under `spec` with gamma overridden, tracked every recorded step up to t_end.
Trajectory precession_experiment(const PotentialSpec& spec, double gamma, double x0, double y0, double t_end,
                                 const PrecessionOptions& options = {}, const SnapshotHook& snapshots = {});

}  // namespace ptgpe
