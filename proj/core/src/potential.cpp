#include "ptgpe/potential.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "ptgpe/error.hpp"

namespace ptgpe {

std::string_view to_string(PotentialKind kind) noexcept {
  switch (kind) {
    case PotentialKind::A: return "A";
    case PotentialKind::B: return "B";
    case PotentialKind::C: return "C";
    case PotentialKind::PtBrokenC: return "PT_BROKEN_C";
    case PotentialKind::Custom: return "CUSTOM";
  }
  return "?";
}

PotentialKind parse_potential_kind(std::string_view text) {
  std::string up(text);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  for (auto k : {PotentialKind::A, PotentialKind::B, PotentialKind::C, PotentialKind::PtBrokenC, PotentialKind::Custom})
    if (up == to_string(k)) return k;
  throw Error(ErrorCode::Config, "unknown potential kind '" + std::string(text) + "'");
}

std::string potential_violation(const PotentialSpec& spec) {
  if (!std::isfinite(spec.gamma) || !std::isfinite(spec.d) || !std::isfinite(spec.gain_factor))
    return "non-finite potential parameter";
  if (spec.gamma < 0.0) return "gamma must be >= 0";
  if ((spec.kind == PotentialKind::C || spec.kind == PotentialKind::PtBrokenC) && spec.d < 0.0)
    return "d must be >= 0";
  if (spec.kind == PotentialKind::Custom && !spec.table) return "custom potential requires a table";
  return {};
}

void validate_potential(const PotentialSpec& spec) {
  if (auto msg = potential_violation(spec); !msg.empty()) throw Error(ErrorCode::InvalidArgument, msg);
}

namespace {

cdouble interpolate_table(const Wavefunction& t, double x, double y) {
  const auto& g = t.grid();
  const double fx = (x - g.x_min) / g.dx();
  const double fy = (y - g.y_min) / g.dy();
  if (fx < 0.0 || fy < 0.0 || fx > g.n_x - 1 || fy > g.n_y - 1) return evaluate_trap(x, y);
  const int i = std::min(static_cast<int>(fx), g.n_x - 2);
  const int j = std::min(static_cast<int>(fy), g.n_y - 2);
  const double ax = fx - i;
  const double ay = fy - j;
  return (1 - ax) * (1 - ay) * t(i, j) + ax * (1 - ay) * t(i + 1, j) + (1 - ax) * ay * t(i, j + 1) +
         ax * ay * t(i + 1, j + 1);
}

}  // namespace

double evaluate_imaginary(const PotentialSpec& spec, double x, double y) {
  const double r2 = x * x + y * y;
  switch (spec.kind) {
    case PotentialKind::A: return x * std::exp(-r2);
    case PotentialKind::B: return x * x * x * std::exp(-r2);
    case PotentialKind::C:
    case PotentialKind::PtBrokenC: {
      const double gain = spec.kind == PotentialKind::C ? 1.0 : spec.gain_factor;
      const double right = std::exp(-(x - spec.d) * (x - spec.d) - y * y);
      const double left = std::exp(-(x + spec.d) * (x + spec.d) - y * y);
      return gain * right - left;
    }
    case PotentialKind::Custom:
      if (!spec.table) throw Error(ErrorCode::InvalidArgument, "custom potential requires a table");
      return interpolate_table(*spec.table, x, y).imag();
  }
  throw Error(ErrorCode::InvalidArgument, "unknown potential kind");
}

cdouble complex_potential(const PotentialSpec& spec, double x, double y) {
  if (spec.kind == PotentialKind::Custom) {
    if (!spec.table) throw Error(ErrorCode::InvalidArgument, "custom potential requires a table");
    return interpolate_table(*spec.table, x, y);
  }
  return {evaluate_trap(x, y), spec.gamma * evaluate_imaginary(spec, x, y)};
}

Wavefunction sample_potential(const PotentialSpec& spec, const GridSpec& grid) {
  if (spec.kind == PotentialKind::Custom && spec.table && spec.table->grid() == grid) return *spec.table;
  return sample<cdouble>(grid, [&](double x, double y) { return complex_potential(spec, x, y); });
}

Wavefunction potential_offset(const PotentialSpec& spec, const GridSpec& grid) {
  Wavefunction v = sample_potential(spec, grid);
  for (int j = 0; j < grid.n_y; ++j)
    for (int i = 0; i < grid.n_x; ++i) v(i, j) -= evaluate_trap(grid.x(i), grid.y(j));
  return v;
}

bool is_pt_symmetric(const PotentialSpec& spec, const GridSpec& grid, double tol) {
  double worst = 0.0;
  for (int j = 0; j < grid.n_y; ++j) {
    for (int i = 0; i < grid.n_x; ++i) {
      const double x = grid.x(i);
      const double y = grid.y(j);
      worst = std::max(worst, std::abs(complex_potential(spec, -x, y) - std::conj(complex_potential(spec, x, y))));
    }
  }
  return worst < tol;
}

PotentialSpec free_space(const GridSpec& grid) { return PotentialSpec::custom(Wavefunction(grid)); }

PotentialSpec literal_pt_broken(double d, double gamma, const GridSpec& grid) {
  return PotentialSpec::custom(sample<cdouble>(grid, [&](double x, double y) {
    const double bump = std::exp(-(x - d) * (x - d) - y * y);
    return cdouble(evaluate_trap(x, y), gamma * (1.2 * bump - bump));
  }));
}

}  // namespace ptgpe
