#include "ptgpe/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "ptgpe/error.hpp"

namespace ptgpe {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct ParseError {
  std::string message;
};

double to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError{"expected a number, got '" + std::string(s) + "'"};
  return v;
}

template <typename Int>
Int to_int(std::string_view s) {
  s = trim(s);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError{"expected an integer, got '" + std::string(s) + "'"};
  return v;
}

bool to_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ParseError{"expected a boolean, got '" + std::string(s) + "'"};
}

template <typename T, typename F>
std::vector<T> to_list(std::string_view s, F&& item) {
  std::vector<T> out;
  s = trim(s);
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(item(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start))));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <typename T, typename F>
std::string join(const std::vector<T>& xs, F&& item) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += item(xs[i]);
  }
  return out;
}

BranchLabel to_label(std::string_view s) {
  try {
    return parse_branch_label(trim(s));
  } catch (const Error& e) {
    throw ParseError{e.what()};
  }
}

std::string opt_fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }
std::optional<double> to_opt(std::string_view s) {
  if (trim(s).empty()) return std::nullopt;
  return to_double(s);
}

GridSpec preset_grid(std::string_view name) {
  if (name == "default") return default_dynamics_grid();
  if (name == "extended") return extended_dynamics_grid();
  throw ParseError{"unknown grid preset '" + std::string(name) + "' (default, extended)"};
}

struct Field {
  std::string_view key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define PTGPE_DOUBLE(KEY, MEMBER)                                                       \
  Field {                                                                               \
    KEY, [](RunConfig& c, std::string_view v) { c.MEMBER = to_double(v); },             \
        [](const RunConfig& c) { return fmt(c.MEMBER); }                                \
  }
#define PTGPE_INT(KEY, MEMBER, TYPE)                                                    \
  Field {                                                                               \
    KEY, [](RunConfig& c, std::string_view v) { c.MEMBER = to_int<TYPE>(v); },          \
        [](const RunConfig& c) { return std::to_string(c.MEMBER); }                     \
  }
#define PTGPE_STRING(KEY, MEMBER)                                                       \
  Field {                                                                               \
    KEY, [](RunConfig& c, std::string_view v) { c.MEMBER = std::string(trim(v)); },     \
        [](const RunConfig& c) { return c.MEMBER; }                                     \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      PTGPE_DOUBLE("model.g", g),
      Field{"potential.kind",
            [](RunConfig& c, std::string_view v) {
              try {
                c.potential.kind = parse_potential_kind(trim(v));
                if (!c.gain_factor_given) c.potential.gain_factor = c.potential.kind == PotentialKind::PtBrokenC ? 1.2 : 1.0;
              } catch (const Error& e) {
                throw ParseError{e.what()};
              }
            },
            [](const RunConfig& c) { return std::string(to_string(c.potential.kind)); }},
      PTGPE_DOUBLE("potential.d", potential.d),
      PTGPE_DOUBLE("potential.gamma", potential.gamma),
      Field{"potential.gain_factor",
            [](RunConfig& c, std::string_view v) {
              c.potential.gain_factor = to_double(v);
              c.gain_factor_given = true;
            },
            [](const RunConfig& c) { return fmt(c.potential.gain_factor); }},
      PTGPE_STRING("potential.custom", custom_potential_path),
      PTGPE_INT("basis.n_max", n_max, int),
      PTGPE_DOUBLE("basis.extent", basis_extent),
      PTGPE_INT("basis.points", basis_points, int),
      Field{"grid.preset",
            [](RunConfig& c, std::string_view v) {
              c.grid = preset_grid(trim(v));
              c.grid_preset = std::string(trim(v));
            },
            [](const RunConfig& c) { return c.grid_preset; }},
      PTGPE_DOUBLE("grid.x_min", grid.x_min),
      PTGPE_DOUBLE("grid.x_max", grid.x_max),
      PTGPE_DOUBLE("grid.y_min", grid.y_min),
      PTGPE_DOUBLE("grid.y_max", grid.y_max),
      PTGPE_INT("grid.n_x", grid.n_x, int),
      PTGPE_INT("grid.n_y", grid.n_y, int),
      PTGPE_DOUBLE("solver.tol", solver.tol),
      PTGPE_INT("solver.max_iter", solver.max_iter, int),
      Field{"sweep.parameter",
            [](RunConfig& c, std::string_view v) {
              try {
                c.sweep_parameter = parse_sweep_parameter(trim(v));
              } catch (const Error& e) {
                throw ParseError{e.what()};
              }
            },
            [](const RunConfig& c) { return std::string(to_string(c.sweep_parameter)); }},
      Field{"sweep.values",
            [](RunConfig& c, std::string_view v) { c.sweep_values = to_list<double>(v, to_double); },
            [](const RunConfig& c) { return join(c.sweep_values, fmt); }},
      Field{"sweep.start", [](RunConfig& c, std::string_view v) { c.sweep_start = to_opt(v); },
            [](const RunConfig& c) { return opt_fmt(c.sweep_start); }},
      Field{"sweep.stop", [](RunConfig& c, std::string_view v) { c.sweep_stop = to_opt(v); },
            [](const RunConfig& c) { return opt_fmt(c.sweep_stop); }},
      Field{"sweep.step", [](RunConfig& c, std::string_view v) { c.sweep_step = to_opt(v); },
            [](const RunConfig& c) { return opt_fmt(c.sweep_step); }},
      Field{"solve.branch", [](RunConfig& c, std::string_view v) { c.solve_branch = to_label(v); },
            [](const RunConfig& c) { return std::string(to_string(c.solve_branch)); }},
      Field{"spectrum.branches",
            [](RunConfig& c, std::string_view v) { c.spectrum_branches = to_list<BranchLabel>(v, to_label); },
            [](const RunConfig& c) {
              return join(c.spectrum_branches, [](BranchLabel b) { return std::string(to_string(b)); });
            }},
      Field{"stability.branches",
            [](RunConfig& c, std::string_view v) { c.stability_branches = to_list<BranchLabel>(v, to_label); },
            [](const RunConfig& c) {
              return join(c.stability_branches, [](BranchLabel b) { return std::string(to_string(b)); });
            }},
      Field{"stability.spectra", [](RunConfig& c, std::string_view v) { c.dump_spectra = to_bool(v); },
            [](const RunConfig& c) { return std::string(c.dump_spectra ? "true" : "false"); }},
      PTGPE_DOUBLE("propagation.dt", propagation.dt),
      PTGPE_INT("propagation.n_steps", propagation.n_steps, long),
      PTGPE_DOUBLE("propagation.noise_amplitude", propagation.noise_amplitude),
      PTGPE_INT("propagation.record_every", propagation.record_every, long),
      PTGPE_INT("propagation.snapshot_every", snapshot_every, long),
      Field{"propagation.absorbing", [](RunConfig& c, std::string_view v) { c.propagation.absorbing = to_bool(v); },
            [](const RunConfig& c) { return std::string(c.propagation.absorbing ? "true" : "false"); }},
      Field{"evolve.branch", [](RunConfig& c, std::string_view v) { c.evolve_branch = to_label(v); },
            [](const RunConfig& c) { return std::string(to_string(c.evolve_branch)); }},
      PTGPE_STRING("evolve.initial", evolve_initial),
      PTGPE_DOUBLE("precession.x0", precession_x0),
      PTGPE_DOUBLE("precession.y0", precession_y0),
      PTGPE_DOUBLE("precession.t_end", precession_t_end),
      PTGPE_INT("run.seed", seed, std::uint64_t),
      PTGPE_STRING("run.output_dir", output_dir),
  };
  return table;
}

#undef PTGPE_DOUBLE
#undef PTGPE_INT
#undef PTGPE_STRING

const Field* find_field(std::string_view key) {
  for (const auto& f : fields())
    if (f.key == key) return &f;
  return nullptr;
}

// Returns an error message, or empty on success.
std::string assign(RunConfig& c, std::string_view key, std::string_view value) {
  const Field* f = find_field(key);
  if (!f) return std::string(key) + ": unknown key";
  try {
    f->set(c, value);
  } catch (const ParseError& e) {
    return std::string(key) + ": " + e.message;
  }
  return {};
}

[[noreturn]] void throw_all(const std::vector<std::string>& errors) {
  std::string msg = "invalid configuration:";
  for (const auto& e : errors) msg += "\n  " + e;
  throw Error(ErrorCode::Config, msg);
}

}  // namespace

std::vector<double> RunConfig::resolved_sweep() const {
  if (!sweep_values.empty()) return sweep_values;
  if (sweep_start && sweep_stop && sweep_step) return parameter_range(*sweep_start, *sweep_stop, *sweep_step);
  return {parameter_value()};
}

double RunConfig::parameter_value() const {
  return sweep_parameter == SweepParameter::Gamma ? potential.gamma : potential.d;
}

GridSpec RunConfig::basis_grid() const {
  GridSpec g = default_basis_grid(n_max);
  if (basis_extent > 0.0) g = GridSpec::square(basis_extent, g.n_x);
  if (basis_points > 0) g.n_x = g.n_y = basis_points;
  return g;
}

RunConfig parse_config(std::string_view text, const RunConfig& base) {
  RunConfig c = base;
  std::vector<std::string> errors;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected 'section.key = value'");
      continue;
    }
    if (auto e = assign(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1))); !e.empty())
      errors.push_back("line " + std::to_string(line_no) + ": " + e);
  }
  auto more = validate(c);
  errors.insert(errors.end(), more.begin(), more.end());
  if (!errors.empty()) throw_all(errors);
  return c;
}

RunConfig load_config(const std::string& path, const RunConfig& base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Config, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

void apply_override(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw Error(ErrorCode::Config, "override '" + std::string(assignment) + "' is not section.key=value");
  if (auto e = assign(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1))); !e.empty())
    throw_all({e});
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> err;
  auto check = [&](bool ok, const char* key, const std::string& what) {
    if (!ok) err.push_back(std::string(key) + ": " + what);
  };
  check(std::isfinite(c.g) && c.g >= 0.0, "model.g", "must be a finite value >= 0");
  check(c.potential.gamma >= 0.0 && std::isfinite(c.potential.gamma), "potential.gamma", "must be >= 0");
  check(c.potential.d >= 0.0 && std::isfinite(c.potential.d), "potential.d", "must be >= 0");
  check(c.potential.gain_factor > 0.0 && std::isfinite(c.potential.gain_factor), "potential.gain_factor",
        "must be > 0");
  check(c.potential.kind != PotentialKind::Custom || !c.custom_potential_path.empty(), "potential.custom",
        "required for kind CUSTOM");
  check(c.n_max >= 0 && c.n_max <= 64, "basis.n_max", "must lie in [0, 64]");
  check(c.basis_extent >= 0.0, "basis.extent", "must be >= 0 (0 selects the default)");
  check(c.basis_points == 0 || is_power_of_two(c.basis_points), "basis.points", "must be 0 or a power of two");
  if (auto g = grid_violation(c.grid); !g.empty()) err.push_back("grid: " + g);
  check(c.solver.tol > 0.0, "solver.tol", "must be > 0");
  check(c.solver.max_iter >= 1, "solver.max_iter", "must be >= 1");
  const bool any_range = c.sweep_start || c.sweep_stop || c.sweep_step;
  if (any_range && c.sweep_values.empty()) {
    check(c.sweep_start && c.sweep_stop && c.sweep_step, "sweep", "start, stop and step must be given together");
    if (c.sweep_step) check(*c.sweep_step > 0.0, "sweep.step", "must be > 0");
    if (c.sweep_start && c.sweep_stop) check(*c.sweep_stop >= *c.sweep_start, "sweep.stop", "must be >= start");
  }
  check(std::is_sorted(c.sweep_values.begin(), c.sweep_values.end()), "sweep.values", "must be ascending");
  check(c.propagation.dt > 0.0 && std::isfinite(c.propagation.dt), "propagation.dt", "must be > 0");
  check(c.propagation.n_steps >= 0, "propagation.n_steps", "must be >= 0");
  check(c.propagation.noise_amplitude >= 0.0, "propagation.noise_amplitude", "must be >= 0");
  check(c.propagation.record_every >= 1, "propagation.record_every", "must be >= 1");
  check(c.snapshot_every >= 0, "propagation.snapshot_every", "must be >= 0");
  check(c.evolve_initial == "stationary" || c.evolve_initial == "offcenter", "evolve.initial",
        "must be 'stationary' or 'offcenter'");
  check(c.precession_t_end >= 0.0, "precession.t_end", "must be >= 0");
  check(c.grid.contains(c.precession_x0, c.precession_y0), "precession.x0", "core must lie inside the grid");
  check(!c.output_dir.empty(), "run.output_dir", "must not be empty");
  return err;
}

void require_valid(const RunConfig& config) {
  if (auto errors = validate(config); !errors.empty()) throw_all(errors);
}

std::string serialize(const RunConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    out += f.key;
    out += " = ";
    out += f.get(config);
    out += "\n";
  }
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& f : fields()) keys.emplace_back(f.key);
  return keys;
}

double g_from_physical(long n_atoms, double scattering_length, double r0) {
  if (n_atoms < 1) throw Error(ErrorCode::InvalidArgument, "g_from_physical: N must be >= 1");
  if (!(scattering_length >= 0.0)) throw Error(ErrorCode::InvalidArgument, "g_from_physical: a must be >= 0");
  if (!(r0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "g_from_physical: r0 must be > 0");
  return 8.0 * std::numbers::pi * static_cast<double>(n_atoms) * scattering_length / r0;
}

}  // namespace ptgpe
