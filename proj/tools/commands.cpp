#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "ptgpe/ptgpe.hpp"
#include "ptgpe/parallel.hpp"

namespace ptgpe::cli {

namespace fs = std::filesystem;

namespace {

fs::path output_dir(const Context& ctx) {
  fs::path dir(ctx.config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

PotentialSpec make_potential(const RunConfig& cfg) {
  PotentialSpec spec = cfg.potential;
  if (spec.kind == PotentialKind::Custom)
    spec.table = std::make_shared<const Wavefunction>(read_gpe2(cfg.custom_potential_path));
  return spec;
}

std::string label_name(BranchLabel b) {
  std::string s(to_string(b));
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

bool is_vortex(BranchLabel b) { return b == BranchLabel::VortexPlus || b == BranchLabel::VortexMinus; }

/// Writes the branch CSV and one coefficient file per sample.
void dump_branch(const SpectrumBranch& br, const BasisSet& basis, const fs::path& dir, Outcome& o) {
  std::vector<BranchRow> rows;
  for (const auto& s : br.samples) {
    rows.push_back(branch_row(s.parameter, s.state, basis));
    const std::string coeff = label_name(br.label) + "_" + format_double(s.parameter) + ".coeff.csv";
    write_coefficients((dir / coeff).string(), s.state.coeffs, basis);
    o.files.push_back(coeff);
  }
  const std::string csv = label_name(br.label) + ".csv";
  write_branch_csv((dir / csv).string(), rows);
  o.files.push_back(csv);
}

struct BranchRun {
  std::optional<SpectrumBranch> branch;
  std::string error;
};

std::vector<BranchRun> run_branches(const Context& ctx, const std::vector<BranchLabel>& labels,
                                    const BasisSet& basis, const PotentialSpec& spec) {
  const auto& cfg = ctx.config;
  const auto values = cfg.resolved_sweep();
  ContinuationOptions opt;
  opt.solver = cfg.solver;
  std::vector<BranchRun> runs(labels.size());
  parallel_for(labels.size(), ctx.threads, [&](std::size_t i) {
    try {
      runs[i].branch = continue_branch(labels[i], cfg.g, spec, cfg.sweep_parameter, values, basis, opt);
    } catch (const Error& e) {
      runs[i].error = std::string(to_string(e.code())) + ": " + e.what();
    }
  });
  return runs;
}

std::string gpe2_name(long step) {
  std::ostringstream os;
  os << "snapshot_" << std::setw(7) << std::setfill('0') << step << ".gpe2";
  return os.str();
}

SnapshotHook snapshot_hook(const Context& ctx, const fs::path& dir, Outcome& o) {
  SnapshotHook hook;
  hook.every = ctx.config.snapshot_every > 0 ? ctx.config.snapshot_every : std::numeric_limits<long>::max();
  hook.sink = [&dir, &o](long step, const Wavefunction& psi) {
    const auto name = gpe2_name(step);
    write_gpe2((dir / name).string(), psi);
    o.files.push_back(name);
  };
  return hook;
}

void summarize_trajectory(const Trajectory& t, Outcome& o) {
  o.summary.emplace_back("steps", std::to_string(t.steps_taken));
  if (!t.norms.empty()) {
    o.summary.emplace_back("final_norm", format_double(t.norms.back()));
    o.summary.emplace_back("final_overlap", format_double(t.overlaps.back()));
    if (std::isfinite(t.centers.back()[0])) {
      o.summary.emplace_back("final_x", format_double(t.centers.back()[0]));
      o.summary.emplace_back("final_y", format_double(t.centers.back()[1]));
    }
  }
  o.summary.emplace_back("truncation", t.truncation.value_or("none"));
}

}  // namespace

Outcome cmd_solve(const Context& ctx) {
  const auto& cfg = ctx.config;
  const auto dir = output_dir(ctx);
  const auto basis = build_basis(cfg.n_max, cfg.basis_grid());
  const auto spec = make_potential(cfg);
  const auto state = solve_stationary(initial_guess(cfg.solve_branch, basis), cfg.g, spec, basis, cfg.solver);

  Outcome o;
  const auto name = label_name(cfg.solve_branch);
  write_coefficients((dir / (name + ".coeff.csv")).string(), state.coeffs, basis);
  write_gpe2((dir / (name + ".gpe2")).string(), basis.evaluate(state.coeffs, cfg.grid));
  const auto row = branch_row(cfg.parameter_value(), state, basis);
  write_branch_csv((dir / (name + ".csv")).string(), {row});
  o.files = {name + ".coeff.csv", name + ".gpe2", name + ".csv"};

  o.summary = {{"branch", std::string(to_string(cfg.solve_branch))},
               {"found", std::string(to_string(state.branch_label))},
               {"mu_re", format_double(state.mu.real())},
               {"mu_im", format_double(state.mu.imag())},
               {"jphi", format_double(row.j_phi)},
               {"residual", format_double(state.residual_norm)},
               {"iterations", std::to_string(state.iterations)}};
  const bool wanted_vortex = is_vortex(cfg.solve_branch);
  if (wanted_vortex ? state.branch_label != cfg.solve_branch : is_vortex(state.branch_label)) {
    o.exit_code = kNoConvergence;
    o.summary.emplace_back("error", "NO_CONVERGENCE");
    o.notes.emplace_back("error", "converged to " + std::string(to_string(state.branch_label)) + " instead of " +
                                      std::string(to_string(cfg.solve_branch)));
  }
  return o;
}

Outcome cmd_spectrum(const Context& ctx) {
  const auto& cfg = ctx.config;
  const auto dir = output_dir(ctx);
  const auto basis = build_basis(cfg.n_max, cfg.basis_grid());
  const auto spec = make_potential(cfg);
  const auto runs = run_branches(ctx, cfg.spectrum_branches, basis, spec);

  Outcome o;
  const SpectrumBranch* by_label[5] = {};
  int ok = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto label = cfg.spectrum_branches[i];
    if (!runs[i].branch) {
      o.notes.emplace_back("failed." + label_name(label), runs[i].error);
      continue;
    }
    ++ok;
    by_label[static_cast<int>(label)] = &*runs[i].branch;
    dump_branch(*runs[i].branch, basis, dir, o);
  }

  ContinuationOptions opt;
  opt.solver = cfg.solver;
  std::ostringstream report;
  report << "branch,event,parameter,lower,upper,mu_re,jphi,partner,partner_mu_gap\n";
  int events = 0;
  for (const auto& run : runs) {
    if (!run.branch || !run.branch->terminated_at) continue;
    const auto& br = *run.branch;
    const auto bif = locate_bifurcation(br, basis, 1e-6, opt);
    std::string partner = "";
    double gap = std::numeric_limits<double>::quiet_NaN();
    for (auto other : {BranchLabel::Ground, BranchLabel::ExcitedX, BranchLabel::ExcitedY}) {
      const auto* ob = by_label[static_cast<int>(other)];
      if (!ob || other == br.label) continue;
      if (const auto mu = interpolate_mu(*ob, bif.lower)) {
        const double d = std::abs(mu->real() - bif.last_state.mu.real());
        if (!(d >= gap)) {
          gap = d;
          partner = std::string(to_string(other));
        }
      }
    }
    report << to_string(br.label) << ",termination," << format_double(bif.parameter) << ','
           << format_double(bif.lower) << ',' << format_double(bif.upper) << ','
           << format_double(bif.last_state.mu.real()) << ','
           << format_double(azimuthal_current(bif.last_state.coeffs, basis)) << ',' << partner << ','
           << format_double(gap) << '\n';
    o.notes.emplace_back("termination." + label_name(br.label), format_double(bif.parameter));
    ++events;
  }
  const auto* bx = by_label[static_cast<int>(BranchLabel::ExcitedX)];
  const auto* byy = by_label[static_cast<int>(BranchLabel::ExcitedY)];
  if (bx && byy) {
    for (double p : mu_crossings(*bx, *byy)) {
      report << "EXCITED_X,crossing," << format_double(p) << ",,,,,EXCITED_Y,0\n";
      o.notes.emplace_back("crossing.excited_x.excited_y", format_double(p));
      o.summary.emplace_back("crossing", format_double(p));
      ++events;
    }
  }
  {
    std::ofstream out(dir / "bifurcations.csv", std::ios::binary | std::ios::trunc);
    if (!(out << report.str())) throw Error(ErrorCode::Io, "cannot write bifurcations.csv");
  }
  o.files.push_back("bifurcations.csv");
  o.summary.insert(o.summary.begin(), {{"branches", std::to_string(ok)}, {"events", std::to_string(events)}});
  return o;
}

Outcome cmd_stability(const Context& ctx) {
  const auto& cfg = ctx.config;
  const auto dir = output_dir(ctx);
  const auto basis = build_basis(cfg.n_max, cfg.basis_grid());
  const auto spec = make_potential(cfg);
  const auto runs = run_branches(ctx, cfg.stability_branches, basis, spec);

  Outcome o;
  double worst = 0.0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto name = label_name(cfg.stability_branches[i]);
    std::vector<StabilityPoint> points;
    if (runs[i].branch) {
      points = stability_sweep(*runs[i].branch, basis, kStabilityTol, ctx.threads);
    } else {
      o.notes.emplace_back("failed." + name, runs[i].error);
    }
    for (const auto& p : points) {
      if (!p.spectrum) {
        o.notes.emplace_back("failed." + name + "." + format_double(p.parameter), p.error);
        continue;
      }
      worst = std::max(worst, p.spectrum->max_imag);
      if (cfg.dump_spectra) {
        const auto f = name + "_" + format_double(p.parameter) + ".omega.csv";
        write_omega_csv((dir / f).string(), p.spectrum->omegas);
        o.files.push_back(f);
      }
    }
    const auto csv = name + "_stability.csv";
    write_stability_csv((dir / csv).string(), points);
    o.files.push_back(csv);
  }
  o.summary = {{"branches", std::to_string(runs.size())}, {"max_imag", format_double(worst)}};
  return o;
}

Outcome cmd_evolve(const Context& ctx) {
  const auto& cfg = ctx.config;
  const auto dir = output_dir(ctx);
  const auto spec = make_potential(cfg);

  Wavefunction psi0;
  bool track = true;
  if (cfg.evolve_initial == "offcenter") {
    psi0 = offcenter_vortex(cfg.precession_x0, cfg.precession_y0, cfg.grid);
  } else {
    const auto basis = build_basis(cfg.n_max, cfg.basis_grid());
    const auto state = solve_stationary(initial_guess(cfg.evolve_branch, basis), cfg.g, spec, basis, cfg.solver);
    psi0 = basis.evaluate(state.coeffs, cfg.grid);
    normalize(psi0);
    track = is_vortex(state.branch_label);
  }

  PropagationConfig pc = cfg.propagation;
  pc.grid = cfg.grid;
  pc.seed = cfg.seed;
  pc.track = track;
  Outcome o;
  const auto hook = snapshot_hook(ctx, dir, o);
  const auto result = evolve(psi0, pc, cfg.g, spec, hook);
  if (result.trajectory.steps_taken > 0 && (cfg.snapshot_every == 0 || result.trajectory.steps_taken % cfg.snapshot_every)) {
    const auto name = gpe2_name(result.trajectory.steps_taken);
    write_gpe2((dir / name).string(), result.final_state);
    o.files.push_back(name);
  }
  write_trajectory_csv((dir / "trajectory.csv").string(), result.trajectory);
  o.files.push_back("trajectory.csv");
  summarize_trajectory(result.trajectory, o);
  return o;
}

Outcome cmd_precession(const Context& ctx) {
  const auto& cfg = ctx.config;
  const auto dir = output_dir(ctx);
  const auto spec = make_potential(cfg);
  PrecessionOptions po;
  po.g = cfg.g;
  po.dt = cfg.propagation.dt;
  po.grid = cfg.grid;
  po.record_every = cfg.propagation.record_every;
  Outcome o;
  const auto hook = snapshot_hook(ctx, dir, o);
  const auto t = precession_experiment(spec, spec.gamma, cfg.precession_x0, cfg.precession_y0, cfg.precession_t_end,
                                       po, hook);
  write_trajectory_csv((dir / "trajectory.csv").string(), t);
  o.files.push_back("trajectory.csv");
  summarize_trajectory(t, o);
  return o;
}

std::string summary_line(const KeyValues& kv) {
  std::string line;
  for (const auto& [k, v] : kv) {
    if (!line.empty()) line += ' ';
    line += k + "=" + v;
  }
  return line;
}

int run(std::string_view command, const Context& ctx, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    require_valid(ctx.config);
    if (command == "solve") o = cmd_solve(ctx);
    else if (command == "spectrum") o = cmd_spectrum(ctx);
    else if (command == "stability") o = cmd_stability(ctx);
    else if (command == "evolve") o = cmd_evolve(ctx);
    else if (command == "precession") o = cmd_precession(ctx);
    else throw Error(ErrorCode::Config, "unknown command '" + std::string(command) + "'");
  } catch (const BlowUpError& e) {
    o.exit_code = kBlowUp;
    o.summary = {{"error", "BLOW_UP"}, {"step", std::to_string(e.step())}};
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::NoConvergence:
      case ErrorCode::JacobianSingular:
      case ErrorCode::NotConverged: o.exit_code = kNoConvergence; break;
      case ErrorCode::Io: o.exit_code = kIoError; break;
      default: o.exit_code = kConfigError; break;
    }
    o.summary = {{"error", std::string(to_string(e.code()))}};
    if (const auto* s = dynamic_cast<const SolverError*>(&e))
      o.summary.emplace_back("residual", format_double(s->residual()));
    err << "error: " << e.what() << '\n';
  }
  o.summary.insert(o.summary.begin(), {"command", std::string(command)});
  o.summary.emplace_back("exit", std::to_string(o.exit_code));

  if (o.exit_code != kConfigError && o.exit_code != kIoError) {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    KeyValues m = {{"command", std::string(command)},
                   {"build", ctx.build_id},
                   {"seed", std::to_string(ctx.config.seed)},
                   {"threads", std::to_string(ctx.threads)},
                   {"wall_time_s", format_double(wall)},
                   {"exit_code", std::to_string(o.exit_code)}};
    std::istringstream cfg(serialize(ctx.config));
    for (std::string line; std::getline(cfg, line);) {
      const auto eq = line.find(" = ");
      m.emplace_back("config." + line.substr(0, eq), line.substr(eq + 3));
    }
    for (const auto& n : o.notes) m.emplace_back("note." + n.first, n.second);
    m.emplace_back("files.count", std::to_string(o.files.size()));
    for (std::size_t i = 0; i < o.files.size(); ++i) m.emplace_back("files." + std::to_string(i), o.files[i]);
    try {
      write_manifest((fs::path(ctx.config.output_dir) / "manifest.txt").string(), m);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      o.exit_code = kIoError;
    }
  }
  out << summary_line(o.summary) << std::endl;
  return o.exit_code;
}

}  // namespace ptgpe::cli
