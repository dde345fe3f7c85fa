#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>

#include "commands.hpp"
#include "helpers.hpp"

using namespace ptgpe;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::map<std::string, std::string> summary;
};

Run run_cli(const std::string& command, const std::vector<std::string>& overrides, const fs::path& dir, int threads = 1) {
  cli::Context ctx;
  ctx.threads = threads;
  for (const auto& o : overrides) apply_override(ctx.config, o);
  ctx.config.output_dir = dir.string();
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(command, ctx, out, err);
  r.out = out.str();
  std::istringstream ss(r.out);
  for (std::string kv; ss >> kv;) {
    const auto eq = kv.find('=');
    r.summary[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return r;
}

std::map<std::string, std::string> manifest(const fs::path& dir) {
  std::map<std::string, std::string> m;
  std::ifstream in(dir / "manifest.txt");
  for (std::string line; std::getline(in, line);) {
    const auto eq = line.find('=');
    m[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return m;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve the linear ground state") {
  const auto dir = testing::scratch_dir("cli_ground");
  const auto r = run_cli("solve", {"model.g=0", "potential.gamma=0", "solve.branch=GROUND"}, dir);
  CHECK(r.code == 0);
  CHECK(std::abs(std::stod(r.summary.at("mu_re")) - 2.0) < 1e-10);
  CHECK(r.summary.at("command") == "solve");
  for (const char* f : {"ground.coeff.csv", "ground.gpe2", "ground.csv", "manifest.txt"}) CHECK(fs::exists(dir / f));
  const auto m = manifest(dir);
  CHECK(m.at("command") == "solve");
  CHECK(m.at("seed") == "0");
  CHECK(m.at("config.model.g") == "0");
  CHECK(m.at("files.count") == "3");
  CHECK(m.count("wall_time_s") == 1);
  CHECK(m.count("build") == 1);
  for (int i = 0; i < 3; ++i) CHECK(fs::exists(dir / m.at("files." + std::to_string(i))));
}

TEST_CASE("solve a vortex") {
  const auto dir = testing::scratch_dir("cli_vortex");
  const auto r = run_cli("solve", {"potential.gamma=1", "solve.branch=VORTEX_PLUS"}, dir);
  CHECK(r.code == 0);
  CHECK(std::stod(r.summary.at("jphi")) > 0.5);
  CHECK(r.summary.at("found") == "VORTEX_PLUS");
}

TEST_CASE("vortex seed beyond the end of its branch") {
  const auto dir = testing::scratch_dir("cli_past");
  const auto r = run_cli("solve", {"potential.gamma=3", "solve.branch=VORTEX_PLUS"}, dir);
  CHECK(r.code == cli::kNoConvergence);
  CHECK(r.summary.at("exit") == "2");
}

TEST_CASE("configuration errors") {
  const auto dir = testing::scratch_dir("cli_cfg");
  const auto r = run_cli("solve", {"propagation.dt=-1"}, dir);
  CHECK(r.code == cli::kConfigError);
  CHECK_FALSE(fs::exists(dir / "manifest.txt"));
  CHECK(run_cli("bogus", {}, dir).code == cli::kConfigError);
}

TEST_CASE("zero-step evolution writes only the initial snapshot") {
  const auto dir = testing::scratch_dir("cli_zero");
  const auto r = run_cli("evolve", {"propagation.n_steps=0", "propagation.snapshot_every=10", "evolve.initial=offcenter"}, dir);
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "snapshot_0000000.gpe2"));
  CHECK(fs::exists(dir / "trajectory.csv"));
  int snapshots = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".gpe2") ++snapshots;
  CHECK(snapshots == 1);
  CHECK(manifest(dir).at("files.count") == "2");
}

TEST_CASE("evolution snapshots and trajectory") {
  const auto dir = testing::scratch_dir("cli_evolve");
  const auto r = run_cli("evolve", {"propagation.n_steps=25", "propagation.snapshot_every=10", "propagation.noise_amplitude=0.01",
                                    "potential.gamma=1"},
                         dir);
  CHECK(r.code == 0);
  for (const char* f : {"snapshot_0000000.gpe2", "snapshot_0000010.gpe2", "snapshot_0000020.gpe2", "snapshot_0000025.gpe2"})
    CHECK(fs::exists(dir / f));
  CHECK(r.summary.at("steps") == "25");
  const auto m = manifest(dir);
  CHECK(std::stoi(m.at("files.count")) == 5);
}

TEST_CASE("blow-up exit code") {
  const auto dir = testing::scratch_dir("cli_blowup");
  const auto r = run_cli("evolve", {"propagation.dt=1e6", "propagation.n_steps=5", "model.g=1e6", "evolve.initial=offcenter",
                                    "potential.kind=PT_BROKEN_C", "potential.d=1", "potential.gamma=500", "potential.gain_factor=1.2"},
                         dir);
  CHECK(r.code == cli::kBlowUp);
  CHECK(r.summary.count("step") == 1);
}

TEST_CASE("identical runs give identical files") {
  const std::vector<std::string> ov{"sweep.start=0", "sweep.stop=1", "sweep.step=0.25", "spectrum.branches=GROUND,VORTEX_PLUS"};
  const auto a = testing::scratch_dir("cli_det_a");
  const auto b = testing::scratch_dir("cli_det_b");
  REQUIRE(run_cli("spectrum", ov, a).code == 0);
  REQUIRE(run_cli("spectrum", ov, b).code == 0);
  const auto m = manifest(a);
  const int n = std::stoi(m.at("files.count"));
  CHECK(n == 13);
  for (int i = 0; i < n; ++i) {
    const auto f = m.at("files." + std::to_string(i));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  const auto ev = std::vector<std::string>{"propagation.n_steps=30", "propagation.noise_amplitude=0.01", "run.seed=9",
                                           "evolve.initial=offcenter"};
  const auto c = testing::scratch_dir("cli_det_c");
  const auto d = testing::scratch_dir("cli_det_d");
  run_cli("evolve", ev, c);
  run_cli("evolve", ev, d);
  CHECK(slurp(c / "trajectory.csv") == slurp(d / "trajectory.csv"));
}

TEST_CASE("spectrum reports the vortex termination") {
  const auto dir = testing::scratch_dir("cli_spectrum");
  const auto r = run_cli("spectrum", {"sweep.start=0", "sweep.stop=3", "sweep.step=0.1"}, dir, 2);
  CHECK(r.code == 0);
  const auto report = slurp(dir / "bifurcations.csv");
  CHECK(report.rfind("branch,event,parameter,lower,upper,mu_re,jphi,partner,partner_mu_gap\n", 0) == 0);
  CHECK(report.find("VORTEX_PLUS,termination,") != std::string::npos);
  CHECK(report.find("VORTEX_MINUS,termination,") != std::string::npos);
  const auto line = report.substr(report.find("VORTEX_PLUS,termination,"));
  CHECK(line.substr(0, line.find('\n')).find("EXCITED_X") != std::string::npos);
  CHECK(fs::exists(dir / "vortex_plus_0.5.coeff.csv"));
  CHECK(fs::exists(dir / "ground.csv"));
}

TEST_CASE("stability files") {
  const auto dir = testing::scratch_dir("cli_stability");
  const auto r = run_cli("stability", {"sweep.values=0,1", "stability.branches=GROUND,VORTEX_PLUS", "stability.spectra=true"}, dir);
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "ground_stability.csv"));
  CHECK(fs::exists(dir / "vortex_plus_1.omega.csv"));
  CHECK(std::stod(r.summary.at("max_imag")) < 1e-6);
}

TEST_CASE("command-line binary") {
  const std::string exe = PTGPE_EXE;
  const auto dir = testing::scratch_dir("cli_exe");
  const auto cfg = dir / "run.cfg";
  std::ofstream(cfg) << "model.g = 0\npotential.gamma = 0\n";
  CHECK(shell(exe + " solve --config " + cfg.string() + " --out " + (dir / "a").string() + " > " + (dir / "a.txt").string()) == 0);
  CHECK(slurp(dir / "a.txt").find("mu_re=2") != std::string::npos);
  CHECK(shell(exe + " solve --config " + cfg.string() + " --set potential.kind=Z --out " + (dir / "b").string() + " > /dev/null 2>&1") == 1);
  CHECK(shell(exe + " solve --config " + (dir / "missing.cfg").string() + " > /dev/null 2>&1") == 1);
  CHECK(shell(exe + " solve --set solve.branch=VORTEX_PLUS --set potential.gamma=3 --out " + (dir / "c").string() +
              " > /dev/null 2>&1") == 2);
  CHECK(shell(exe + " evolve --seed 5 --threads 1 --set propagation.n_steps=0 --set evolve.initial=offcenter --out " +
              (dir / "d").string() + " > /dev/null") == 0);
  CHECK(manifest(dir / "d").at("seed") == "5");
  CHECK(shell(exe + " --help > /dev/null") == 0);
}

}
