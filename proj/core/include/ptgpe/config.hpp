#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptgpe/continuation.hpp"
#include "ptgpe/dynamics.hpp"
#include "ptgpe/stationary.hpp"

namespace ptgpe {

/// Everything a run needs, in dimensionless oscillator units. Defaults: g = 1, n_max = 11,
/// 128^2 grid on [-5, 5]^2, dt = 1e-3.
struct RunConfig {
  double g = 1.0;
  PotentialSpec potential;
  /// Set once potential.gain_factor is given; otherwise PT_BROKEN_C selects 1.2.
  bool gain_factor_given = false;
  /// GPE2 file with the complex potential table, for kind CUSTOM.
  std::string custom_potential_path;

  int n_max = 11;
  /// Basis quadrature grid; 0 selects default_basis_grid(n_max).
  double basis_extent = 0.0;
  int basis_points = 0;

  std::string grid_preset = "default";
  GridSpec grid = default_dynamics_grid();

  SolverOptions solver;

  SweepParameter sweep_parameter = SweepParameter::Gamma;
  std::vector<double> sweep_values;
  std::optional<double> sweep_start, sweep_stop, sweep_step;

  BranchLabel solve_branch = BranchLabel::Ground;
  std::vector<BranchLabel> spectrum_branches{std::begin(kAllBranches), std::end(kAllBranches)};
  std::vector<BranchLabel> stability_branches{BranchLabel::Ground, BranchLabel::ExcitedX, BranchLabel::ExcitedY,
                                              BranchLabel::VortexPlus};
  bool dump_spectra = false;

  PropagationConfig propagation;
  long snapshot_every = 0;
  BranchLabel evolve_branch = BranchLabel::VortexPlus;
  /// "stationary" (solve evolve_branch first) or "offcenter".
  std::string evolve_initial = "stationary";

  double precession_x0 = 0.2;
  double precession_y0 = 0.2;
  double precession_t_end = 10.0;

  std::uint64_t seed = 0;
  std::string output_dir = "out";

  /// Explicit sweep values, the start/stop/step range, or the single configured value.
  std::vector<double> resolved_sweep() const;
  /// Current gamma or d, depending on sweep_parameter.
  double parameter_value() const;
  GridSpec basis_grid() const;
};

/// Parses `section.key = value` lines ('#' starts a comment) on top of `base`.
/// Unknown keys and unparsable values are collected; throws Error(Config) listing all of them.
RunConfig parse_config(std::string_view text, const RunConfig& base = {});
RunConfig load_config(const std::string& path, const RunConfig& base = {});

/// Applies one `section.key=value` override.
void apply_override(RunConfig& config, std::string_view assignment);

/// Path-qualified violations; empty when the configuration is usable.
std::vector<std::string> validate(const RunConfig& config);

/// Throws Error(Config) with every violation when validate() is non-empty.
void require_valid(const RunConfig& config);

/// Every key in canonical order, doubles in shortest round-trip form.
std::string serialize(const RunConfig& config);

/// Documented keys in canonical order.
std::vector<std::string> config_keys();

/// g = 8 pi N a / r0. Throws Error(InvalidArgument) for N < 1, a < 0 or r0 <= 0.
double g_from_physical(long n_atoms, double scattering_length, double r0);

}  // namespace ptgpe
