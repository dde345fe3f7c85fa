#include "ptgpe/continuation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "ptgpe/error.hpp"

namespace ptgpe {

std::string_view to_string(SweepParameter p) noexcept { return p == SweepParameter::Gamma ? "gamma" : "d"; }

SweepParameter parse_sweep_parameter(std::string_view text) {
  std::string low(text);
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
  if (low == "gamma") return SweepParameter::Gamma;
  if (low == "d") return SweepParameter::D;
  throw Error(ErrorCode::Config, "unknown sweep parameter '" + std::string(text) + "'");
}

PotentialSpec with_parameter(const PotentialSpec& spec, SweepParameter p, double value) {
  PotentialSpec out = spec;
  (p == SweepParameter::Gamma ? out.gamma : out.d) = value;
  return out;
}

std::vector<double> parameter_range(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) throw Error(ErrorCode::InvalidArgument, "parameter_range: bad range");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-3));
  for (long k = 0; k <= n; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

namespace {

bool is_vortex(BranchLabel l) { return l == BranchLabel::VortexPlus || l == BranchLabel::VortexMinus; }

bool requires_real_mu(const PotentialSpec& spec) {
  return spec.kind == PotentialKind::A || spec.kind == PotentialKind::B || spec.kind == PotentialKind::C;
}

struct Attempt {
  std::optional<StationaryState> state;
  std::string reason;
};

Attempt attempt(const StationaryState& seed, BranchLabel label, const PotentialSpec& spec, const BasisSet& basis,
                const ContinuationOptions& opt) {
  Attempt a;
  StationaryState s;
  try {
    s = solve_stationary({seed.coeffs, seed.mu}, seed.g, spec, basis, opt.solver);
  } catch (const SolverError& e) {
    a.reason = std::string(to_string(e.code()));
    return a;
  }
  if (requires_real_mu(spec) && std::abs(s.mu.imag()) > opt.real_mu_tol) {
    a.reason = "COMPLEX_MU";
  } else if (is_vortex(label) ? s.branch_label != label : is_vortex(s.branch_label)) {
    a.reason = "LABEL_CHANGE";
  } else if (coefficient_overlap(seed.coeffs, s.coeffs) <= opt.min_overlap) {
    a.reason = "OVERLAP_LOSS";
  } else {
    a.state = std::move(s);
  }
  return a;
}

}  // namespace

SpectrumBranch continue_branch(BranchLabel label, double g, const PotentialSpec& spec_template,
                               SweepParameter parameter, std::span<const double> values, const BasisSet& basis,
                               const ContinuationOptions& options) {
  if (!std::is_sorted(values.begin(), values.end()))
    throw Error(ErrorCode::InvalidArgument, "continue_branch: values must be sorted");
  SpectrumBranch branch;
  branch.label = label;
  branch.parameter = parameter;
  branch.g = g;
  branch.spec_template = spec_template;
  if (values.empty()) return branch;

  const Guess seed = initial_guess(label, basis);
  StationaryState fresh;
  fresh.coeffs = seed.coeffs;
  fresh.mu = seed.mu;
  fresh.g = g;
  auto first = attempt(fresh, label, with_parameter(spec_template, parameter, values[0]), basis, options);
  if (!first.state) {
    // Fresh seed: no overlap requirement.
    try {
      auto s = solve_stationary(seed, g, with_parameter(spec_template, parameter, values[0]), basis, options.solver);
      if (is_vortex(label) ? s.branch_label == label : !is_vortex(s.branch_label)) first.state = std::move(s);
    } catch (const SolverError&) {
    }
  }
  if (!first.state) {
    std::ostringstream os;
    os << "continue_branch: " << to_string(label) << " not found at " << to_string(parameter) << "=" << values[0]
       << " (" << first.reason << ")";
    throw Error(ErrorCode::NoConvergence, os.str());
  }
  branch.samples.push_back({values[0], *first.state});
  BranchSample current = branch.samples.back();

  for (std::size_t k = 1; k < values.size(); ++k) {
    const double target = values[k];
    double step = target - current.parameter;
    while (current.parameter < target) {
      const double next = std::min(target, current.parameter + step);
      auto a = attempt(current.state, label, with_parameter(spec_template, parameter, next), basis, options);
      if (a.state) {
        current = {next, std::move(*a.state)};
        continue;
      }
      step *= 0.5;
      if (step < options.min_step) {
        branch.terminated_at = next;
        branch.termination_reason = a.reason;
        branch.frontier = current;
        return branch;
      }
    }
    branch.samples.push_back(current);
  }
  branch.frontier = current;
  return branch;
}

Bifurcation locate_bifurcation(const SpectrumBranch& branch, const BasisSet& basis, double refine_tol,
                               const ContinuationOptions& options) {
  if (!branch.terminated_at || !branch.frontier)
    throw Error(ErrorCode::NotTerminated, "locate_bifurcation: branch did not terminate in range");
  if (!(refine_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "locate_bifurcation: refine_tol must be > 0");
  Bifurcation b;
  b.lower = branch.frontier->parameter;
  b.upper = *branch.terminated_at;
  b.last_state = branch.frontier->state;
  while (b.upper - b.lower > refine_tol) {
    const double mid = 0.5 * (b.lower + b.upper);
    auto a = attempt(b.last_state, branch.label, with_parameter(branch.spec_template, branch.parameter, mid), basis,
                     options);
    if (a.state) {
      b.lower = mid;
      b.last_state = std::move(*a.state);
    } else {
      b.upper = mid;
    }
  }
  b.parameter = 0.5 * (b.lower + b.upper);
  return b;
}

std::optional<cdouble> interpolate_mu(const SpectrumBranch& branch, double parameter) {
  const auto& s = branch.samples;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k].parameter == parameter) return s[k].state.mu;
    if (k + 1 < s.size() && s[k].parameter < parameter && parameter < s[k + 1].parameter) {
      const double t = (parameter - s[k].parameter) / (s[k + 1].parameter - s[k].parameter);
      return (1.0 - t) * s[k].state.mu + t * s[k + 1].state.mu;
    }
  }
  return std::nullopt;
}

std::vector<double> mu_crossings(const SpectrumBranch& a, const SpectrumBranch& b, double zero_tol) {
  std::vector<std::pair<double, double>> diff;
  for (const auto& sa : a.samples)
    for (const auto& sb : b.samples)
      if (sa.parameter == sb.parameter) diff.emplace_back(sa.parameter, sa.state.mu.real() - sb.state.mu.real());
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < diff.size(); ++k) {
    const auto [p0, d0] = diff[k];
    const auto [p1, d1] = diff[k + 1];
    if (std::abs(d0) < zero_tol || std::abs(d1) < zero_tol) continue;
    if ((d0 < 0.0) != (d1 < 0.0)) out.push_back(p0 + (p1 - p0) * d0 / (d0 - d1));
  }
  return out;
}

}  // namespace ptgpe
