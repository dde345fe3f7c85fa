#include "ptgpe/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ptgpe/error.hpp"

namespace ptgpe {

static_assert(std::endian::native == std::endian::little, "GPE2 I/O assumes a little-endian host");

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

template <typename T>
void put(std::ostream& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.write(buf, sizeof(T));
}

template <typename T>
T get(std::istream& in, const std::string& path) {
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) throw Error(ErrorCode::Io, "'" + path + "' is truncated");
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

template <typename Sample>
void write_field(const std::string& path, const GridField<Sample>& f) {
  auto out = open_out(path);
  const auto& g = f.grid();
  out.write("GPE2", 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n_x));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n_y));
  for (double v : {g.x_min, g.x_max, g.y_min, g.y_max}) put(out, v);
  for (const auto& s : f.values()) {
    const cdouble z(s);
    put(out, z.real());
    put(out, z.imag());
  }
  finish(out, path);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double parse_number(const std::string& s, const std::string& path) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw Error(ErrorCode::Io, "'" + path + "': bad number '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_gpe2(const std::string& path, const Wavefunction& psi) { write_field(path, psi); }
void write_gpe2(const std::string& path, const RealField& field) { write_field(path, field); }

Wavefunction read_gpe2(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "GPE2", 4) != 0)
    throw Error(ErrorCode::Io, "'" + path + "' is not a GPE2 file");
  GridSpec g;
  g.n_x = static_cast<int>(get<std::uint32_t>(in, path));
  g.n_y = static_cast<int>(get<std::uint32_t>(in, path));
  g.x_min = get<double>(in, path);
  g.x_max = get<double>(in, path);
  g.y_min = get<double>(in, path);
  g.y_max = get<double>(in, path);
  if (auto msg = grid_violation(g); !msg.empty()) throw Error(ErrorCode::Io, "'" + path + "': " + msg);
  Wavefunction psi(g);
  for (auto& v : psi.values()) {
    const double re = get<double>(in, path);
    const double im = get<double>(in, path);
    v = {re, im};
  }
  return psi;
}

void write_coefficients(const std::string& path, const CoeffVector& c, const BasisSet& basis) {
  if (c.size() != basis.size()) throw Error(ErrorCode::InvalidArgument, "write_coefficients: length mismatch");
  auto out = open_out(path);
  out << "n_x,n_y,re,im\n";
  for (int k = 0; k < basis.size(); ++k) {
    const auto& s = basis.states()[static_cast<std::size_t>(k)];
    out << s.n_x << ',' << s.n_y << ',' << format_double(c(k).real()) << ',' << format_double(c(k).imag()) << '\n';
  }
  finish(out, path);
}

CoeffVector read_coefficients(const std::string& path, const BasisSet& basis) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("n_x,n_y,re,im", 0) != 0)
    throw Error(ErrorCode::Io, "'" + path + "': missing coefficient header");
  CoeffVector c = CoeffVector::Zero(basis.size());
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 4) throw Error(ErrorCode::Io, "'" + path + "': malformed line '" + line + "'");
    const int nx = static_cast<int>(parse_number(f[0], path));
    const int ny = static_cast<int>(parse_number(f[1], path));
    const int k = basis.index_of(nx, ny);
    if (k < 0) throw Error(ErrorCode::Io, "'" + path + "': state outside the basis");
    c(k) = cdouble(parse_number(f[2], path), parse_number(f[3], path));
  }
  return c;
}

BranchRow branch_row(double param, const StationaryState& state, const BasisSet& basis) {
  const auto e = energy_split(state, basis);
  return {param, state.mu, e.kinetic, e.potential, azimuthal_current(state.coeffs, basis), state.residual_norm};
}

void write_branch_csv(const std::string& path, const std::vector<BranchRow>& rows) {
  auto out = open_out(path);
  out << "param,mu_re,mu_im,Ekin,Epot_re,Epot_im,Jphi,norm_residual\n";
  for (const auto& r : rows)
    out << format_double(r.param) << ',' << format_double(r.mu.real()) << ',' << format_double(r.mu.imag()) << ','
        << format_double(r.e_kin) << ',' << format_double(r.e_pot.real()) << ',' << format_double(r.e_pot.imag())
        << ',' << format_double(r.j_phi) << ',' << format_double(r.norm_residual) << '\n';
  finish(out, path);
}

void write_stability_csv(const std::string& path, const std::vector<StabilityPoint>& points) {
  auto out = open_out(path);
  out << "param,max_imag,n_unstable_modes\n";
  for (const auto& p : points) {
    out << format_double(p.parameter) << ',';
    if (p.spectrum)
      out << format_double(p.spectrum->max_imag) << ',' << p.spectrum->n_unstable;
    else
      out << ',';
    out << '\n';
  }
  finish(out, path);
}

void write_omega_csv(const std::string& path, const std::vector<cdouble>& omegas) {
  auto out = open_out(path);
  out << "omega_re,omega_im\n";
  for (const auto w : omegas) out << format_double(w.real()) << ',' << format_double(w.imag()) << '\n';
  finish(out, path);
}

void write_trajectory_csv(const std::string& path, const Trajectory& t) {
  auto out = open_out(path);
  out << "t,x,y,norm,overlap\n";
  for (std::size_t k = 0; k < t.times.size(); ++k)
    out << format_double(t.times[k]) << ',' << format_double(t.centers[k][0]) << ','
        << format_double(t.centers[k][1]) << ',' << format_double(t.norms[k]) << ','
        << format_double(t.overlaps[k]) << '\n';
  finish(out, path);
}

void write_manifest(const std::string& path, const std::vector<std::pair<std::string, std::string>>& entries) {
  const std::string tmp = path + ".tmp";
  {
    auto out = open_out(tmp);
    for (const auto& [k, v] : entries) out << k << '=' << v << '\n';
    finish(out, tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot move manifest into place: " + ec.message());
}

}  // namespace ptgpe
