#include "ptgpe/dynamics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "ptgpe/error.hpp"

namespace ptgpe {

GridSpec default_dynamics_grid() { return GridSpec::square(5.0, 128); }
GridSpec extended_dynamics_grid() { return GridSpec::square(10.0, 256); }

std::string propagation_violation(const PropagationConfig& c) {
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) return "dt must be > 0";
  if (c.n_steps < 0) return "n_steps must be >= 0";
  if (c.record_every < 1) return "record_every must be >= 1";
  if (!(c.noise_amplitude >= 0.0)) return "noise_amplitude must be >= 0";
  return grid_violation(c.grid);
}

namespace {

double edge_mask(double s, double lo, double hi) {
  const double width = 0.1 * (hi - lo);
  const double dist = std::min(s - lo, hi - s);
  if (dist >= width) return 1.0;
  return std::pow(std::sin(0.5 * std::numbers::pi * std::max(dist, 0.0) / width), 0.125);
}

}  // namespace

SplitStepPropagator::SplitStepPropagator(const GridSpec& grid, double dt, double g, const PotentialSpec& spec,
                                         bool absorbing)
    : fft_(grid), dt_(dt), g_(g) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "SplitStepPropagator: dt must be > 0");
  validate_potential(spec);
  half_kinetic_.resize(grid.size());
  for (int j = 0; j < grid.n_y; ++j)
    for (int i = 0; i < grid.n_x; ++i) {
      const double k2 = fft_.kx()[i] * fft_.kx()[i] + fft_.ky()[j] * fft_.ky()[j];
      half_kinetic_[grid.index(i, j)] = std::polar(1.0, -0.5 * k2 * dt);
    }
  const Wavefunction v = sample_potential(spec, grid);
  v_re_.resize(grid.size());
  v_im_.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    v_re_[k] = v[k].real();
    v_im_[k] = v[k].imag();
  }
  if (absorbing) {
    mask_.resize(grid.size());
    for (int j = 0; j < grid.n_y; ++j)
      for (int i = 0; i < grid.n_x; ++i)
        mask_[grid.index(i, j)] =
            edge_mask(grid.x(i), grid.x_min, grid.x_max) * edge_mask(grid.y(j), grid.y_min, grid.y_max);
  }
}

void SplitStepPropagator::step(Wavefunction& psi) const {
  if (!(psi.grid() == fft_.grid())) throw Error(ErrorCode::GridMismatch, "split_step: grid differs from propagator");
  cdouble* p = psi.data();
  const std::size_t n = psi.size();
  fft_.forward(p);
  for (std::size_t k = 0; k < n; ++k) p[k] *= half_kinetic_[k];
  fft_.backward(p);
  for (std::size_t k = 0; k < n; ++k) {
    const double rho0 = std::norm(p[k]);
    const double vi = v_im_[k];
    const double growth = vi == 0.0 ? dt_ : std::expm1(2.0 * vi * dt_) / (2.0 * vi);
    const double phase = v_re_[k] * dt_ + g_ * rho0 * growth;
    p[k] *= std::exp(vi * dt_) * std::polar(1.0, -phase);
  }
  fft_.forward(p);
  for (std::size_t k = 0; k < n; ++k) p[k] *= half_kinetic_[k];
  fft_.backward(p);
  if (!mask_.empty())
    for (std::size_t k = 0; k < n; ++k) p[k] *= mask_[k];
}

Wavefunction split_step(const Wavefunction& psi, double dt, double g, const PotentialSpec& spec) {
  Wavefunction out = psi;
  SplitStepPropagator(psi.grid(), dt, g, spec).step(out);
  return out;
}

void add_noise(Wavefunction& psi, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, amplitude);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (auto& v : psi.values()) {
    const double r = radius(rng);
    v += std::polar(r, angle(rng));
  }
}

EvolveResult evolve(const Wavefunction& psi0, const PropagationConfig& config, double g, const PotentialSpec& spec,
                    const SnapshotHook& snapshots) {
  if (auto msg = propagation_violation(config); !msg.empty()) throw Error(ErrorCode::InvalidArgument, "evolve: " + msg);
  if (!(psi0.grid() == config.grid)) throw Error(ErrorCode::GridMismatch, "evolve: initial state not on config grid");

  const SplitStepPropagator prop(config.grid, config.dt, g, spec, config.absorbing);
  EvolveResult r{{}, psi0};
  Wavefunction& psi = r.final_state;
  if (config.noise_amplitude > 0.0) {
    add_noise(psi, config.noise_amplitude, config.seed);
    normalize(psi);
  }
  auto& tr = r.trajectory;
  std::optional<Point2> center;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  auto record = [&](long step, double norm) {
    Point2 c{nan, nan};
    if (config.track) {
      try {
        c = track_vortex(psi, center);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::LostVortex) throw;
        tr.truncation = std::string(to_string(e.code()));
        return false;
      }
      center = c;
    }
    tr.times.push_back(static_cast<double>(step) * config.dt);
    tr.centers.push_back(c);
    tr.norms.push_back(norm);
    tr.overlaps.push_back(fidelity(psi0, psi));
    return true;
  };
  auto snapshot = [&](long step) {
    if (snapshots.sink && snapshots.every > 0 && step % snapshots.every == 0) snapshots.sink(step, psi);
  };

  snapshot(0);
  if (!record(0, norm_squared(psi))) return r;
  for (long s = 1; s <= config.n_steps; ++s) {
    prop.step(psi);
    const double norm = norm_squared(psi);
    if (!std::isfinite(norm)) {
      std::ostringstream os;
      os << "non-finite field at step " << s;
      throw BlowUpError(os.str(), s);
    }
    tr.steps_taken = s;
    snapshot(s);
    if (s % config.record_every == 0 && !record(s, norm)) break;
  }
  return r;
}

Wavefunction offcenter_vortex(double x0, double y0, const GridSpec& grid) {
  validate_grid(grid);
  if (!grid.contains(x0, y0)) throw Error(ErrorCode::InvalidArgument, "offcenter_vortex: core outside the grid");
  Wavefunction psi = sample<cdouble>(grid, [&](double x, double y) {
    return cdouble(x - x0, y - y0) * std::exp(-0.5 * (x * x + y * y));
  });
  normalize(psi);
  return psi;
}

namespace {

int wrap(int i, int n) { return ((i % n) + n) % n; }

}  // namespace

Point2 track_vortex(const Wavefunction& psi, std::optional<Point2> previous, double search_radius) {
  const auto& g = psi.grid();
  const RealField rho = [&] {
    RealField r(g);
    for (std::size_t k = 0; k < psi.size(); ++k) r[k] = std::norm(psi[k]);
    return r;
  }();

  double total = 0.0, sq = 0.0, mx = 0.0, my = 0.0;
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i) {
      const double w = rho(i, j);
      total += w;
      sq += w * w;
      mx += w * g.x(i);
      my += w * g.y(j);
    }
  if (!(total > 0.0)) throw Error(ErrorCode::LostVortex, "track_vortex: empty field");
  const double cloud_mean = sq / total;

  Point2 c;
  double radius;
  if (previous) {
    c = *previous;
    radius = search_radius;
  } else {
    c = {mx / total, my / total};
    double m2 = 0.0;
    for (int j = 0; j < g.n_y; ++j)
      for (int i = 0; i < g.n_x; ++i)
        m2 += rho(i, j) * ((g.x(i) - c[0]) * (g.x(i) - c[0]) + (g.y(j) - c[1]) * (g.y(j) - c[1]));
    radius = std::sqrt(m2 / total);
  }

  int bi = -1, bj = -1;
  double best = std::numeric_limits<double>::infinity();
  double disk_sum = 0.0;
  long disk_count = 0;
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i) {
      const double dx = g.x(i) - c[0];
      const double dy = g.y(j) - c[1];
      if (dx * dx + dy * dy > radius * radius) continue;
      disk_sum += rho(i, j);
      ++disk_count;
      if (rho(i, j) < best) {
        best = rho(i, j);
        bi = i;
        bj = j;
      }
    }
  if (disk_count == 0) throw Error(ErrorCode::LostVortex, "track_vortex: search disk contains no grid points");
  const double disk_mean = disk_sum / static_cast<double>(disk_count);
  if (best > 0.3 * disk_mean) {
    std::ostringstream os;
    os << "track_vortex: minimum density " << best << " exceeds 0.3 x disk mean " << disk_mean;
    throw Error(ErrorCode::LostVortex, os.str());
  }
  if (disk_mean < 0.1 * cloud_mean) {
    std::ostringstream os;
    os << "track_vortex: search disk mean " << disk_mean << " is outside the cloud (mean " << cloud_mean << ")";
    throw Error(ErrorCode::LostVortex, os.str());
  }

  // f = a + b u + c v + d u^2 + e u v + f v^2 on the 3x3 stencil, offsets in cells.
  Eigen::Matrix<double, 9, 6> design;
  Eigen::Matrix<double, 9, 1> values;
  int row = 0;
  for (int dj = -1; dj <= 1; ++dj)
    for (int di = -1; di <= 1; ++di) {
      design.row(row) << 1.0, di, dj, di * di, di * dj, dj * dj;
      values(row) = rho(wrap(bi + di, g.n_x), wrap(bj + dj, g.n_y));
      ++row;
    }
  const Eigen::Matrix<double, 6, 1> q = design.colPivHouseholderQr().solve(values);
  Eigen::Matrix2d hess;
  hess << 2.0 * q(3), q(4), q(4), 2.0 * q(5);
  Point2 fit{g.x(bi), g.y(bj)};
  if (hess.determinant() > 0.0 && hess(0, 0) > 0.0) {
    const Eigen::Vector2d shift = -hess.inverse() * Eigen::Vector2d(q(1), q(2));
    if (std::abs(shift(0)) <= 1.0 && std::abs(shift(1)) <= 1.0)
      fit = {g.x(bi) + shift(0) * g.dx(), g.y(bj) + shift(1) * g.dy()};
  }

  const FourierInterpolator interp(psi);
  const cdouble at_fit = interp.value(fit[0], fit[1]);
  Point2 p = fit;
  for (int it = 0; it < 12; ++it) {
    const auto jet = interp.jet(p[0], p[1]);
    Eigen::Matrix2d jac;
    jac << jet.d_x.real(), jet.d_y.real(), jet.d_x.imag(), jet.d_y.imag();
    if (!(std::abs(jac.determinant()) > 0.0)) break;
    const Eigen::Vector2d delta = -jac.inverse() * Eigen::Vector2d(jet.value.real(), jet.value.imag());
    p = {p[0] + delta(0), p[1] + delta(1)};
    if (delta.norm() < 1e-13) break;
  }
  const bool near = std::abs(p[0] - fit[0]) <= 1.5 * g.dx() && std::abs(p[1] - fit[1]) <= 1.5 * g.dy();
  if (near && std::isfinite(p[0]) && std::isfinite(p[1]) && std::abs(interp.value(p[0], p[1])) < std::abs(at_fit))
    return p;
  return fit;
}

Trajectory precession_experiment(const PotentialSpec& spec, double gamma, double x0, double y0, double t_end,
                                 const PrecessionOptions& options, const SnapshotHook& snapshots) {
  if (!(t_end >= 0.0)) throw Error(ErrorCode::InvalidArgument, "precession_experiment: t_end must be >= 0");
  PotentialSpec s = spec;
  s.gamma = gamma;
  PropagationConfig cfg;
  cfg.dt = options.dt;
  cfg.n_steps = std::lround(t_end / options.dt);
  cfg.record_every = options.record_every;
  cfg.grid = options.grid;
  cfg.track = true;
  return evolve(offcenter_vortex(x0, y0, options.grid), cfg, options.g, s, snapshots).trajectory;
}

}  // namespace ptgpe
