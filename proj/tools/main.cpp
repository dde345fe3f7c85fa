#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "ptgpe/error.hpp"

#ifndef PTGPE_BUILD_ID
#define PTGPE_BUILD_ID "unknown"
#endif

int main(int argc, char** argv) {
  CLI::App app{"Stationary states, stability and dynamics of 2D condensates with PT-symmetric gain-loss"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  int threads = 1;
  long long seed = -1;

  const char* commands[][2] = {
      {"solve", "Solve one stationary state (solve.branch)"},
      {"spectrum", "Continue all branches over the sweep and report bifurcations"},
      {"stability", "BdG stability along the requested branches"},
      {"evolve", "Real-time propagation of a stationary state or an off-centre vortex"},
      {"precession", "Off-centre vortex precession experiment"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Configuration file (section.key = value)")->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "Override section.key=value (repeatable)")->take_all();
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "PRNG seed")->check(CLI::NonNegativeNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ptgpe::cli::kConfigError;
  }

  ptgpe::cli::Context ctx;
  ctx.threads = threads;
  ctx.build_id = PTGPE_BUILD_ID;
  try {
    if (!config_path.empty()) ctx.config = ptgpe::load_config(config_path);
    for (const auto& o : overrides) ptgpe::apply_override(ctx.config, o);
    if (!out_dir.empty()) ctx.config.output_dir = out_dir;
    if (seed >= 0) ctx.config.seed = static_cast<std::uint64_t>(seed);
  } catch (const ptgpe::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cout << "command=" << app.get_subcommands().front()->get_name() << " error=CONFIG exit=1" << std::endl;
    return ptgpe::cli::kConfigError;
  }
  return ptgpe::cli::run(app.get_subcommands().front()->get_name(), ctx, std::cout, std::cerr);
}
