#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptgpe/stationary.hpp"

namespace ptgpe {

enum class SweepParameter { Gamma, D };

std::string_view to_string(SweepParameter p) noexcept;
SweepParameter parse_sweep_parameter(std::string_view text);

/// Copy of `spec` with gamma or d replaced by `value`.
PotentialSpec with_parameter(const PotentialSpec& spec, SweepParameter p, double value);

/// start, start + step, ... up to stop inclusive (within step/1000).
std::vector<double> parameter_range(double start, double stop, double step);

struct BranchSample {
  double parameter = 0.0;
  StationaryState state;
};

struct SpectrumBranch {
  BranchLabel label = BranchLabel::Ground;
  SweepParameter parameter = SweepParameter::Gamma;
  double g = 0.0;
  PotentialSpec spec_template;
  std::vector<BranchSample> samples;
  /// First parameter value at which continuation failed with the smallest allowed step.
  std::optional<double> terminated_at;
  std::string termination_reason;
  /// Last converged point, possibly between two requested values.
  std::optional<BranchSample> frontier;
};

struct ContinuationOptions {
  SolverOptions solver;
  double min_step = 1e-4;
  /// Consecutive states must overlap by more than this.
  double min_overlap = 0.9;
  /// For PT-symmetric potentials a state with |Im mu| above this ends the branch.
  double real_mu_tol = 1e-8;
};

/// Sequential continuation over sorted `values`. Each point is seeded from the previous converged
/// state; failed steps are halved down to min_step before the branch is declared terminated.
/// Throws if the first value cannot be solved from the fresh seed.
SpectrumBranch continue_branch(BranchLabel label, double g, const PotentialSpec& spec_template,
                               SweepParameter parameter, std::span<const double> values, const BasisSet& basis,
                               const ContinuationOptions& options = {});

struct Bifurcation {
  double parameter = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  /// Converged state at `lower`.
  StationaryState last_state;
};

/// Bisection between the last converged and the first failed parameter. Throws
/// Error(NotTerminated) when the branch never terminated.
Bifurcation locate_bifurcation(const SpectrumBranch& branch, const BasisSet& basis, double refine_tol,
                               const ContinuationOptions& options = {});

/// Linear interpolation of mu between samples; empty outside the sampled range.
std::optional<cdouble> interpolate_mu(const SpectrumBranch& branch, double parameter);

/// Parameters where Re mu_a - Re mu_b changes sign between common sample values, by linear
/// interpolation. Differences below `zero_tol` count as degeneracies, not crossings.
std::vector<double> mu_crossings(const SpectrumBranch& a, const SpectrumBranch& b, double zero_tol = 1e-9);

}  // namespace ptgpe
