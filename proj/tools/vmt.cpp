#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "vmt/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Contact-angle varifold toolkit: collar geometry checks, stationarity residuals, "
               "and boundary density monotonicity"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON experiment description");
  app.add_option("--out", out_dir, "override output.directory");
  CLI::Option* seed_opt = app.add_option("--seed", seed, "override the RNG seed");

  using Driver = int (*)(const vmt::runner::ExperimentConfig&);
  Driver driver = nullptr;
  const auto bind = [&driver](CLI::App* cmd, Driver fn) {
    cmd->fallthrough();
    cmd->callback([&driver, fn]() { driver = fn; });
  };

  bind(app.add_subcommand("lemmas", "sampled collar estimates for the configured domain"),
       &vmt::runner::run_lemmas);
  bind(app.add_subcommand("verify-angle",
                          "stationarity residual sweep under fixture refinement"),
       &vmt::runner::run_residual);
  bind(app.add_subcommand("monotonicity", "corrected density profiles at collar centres"),
       &vmt::runner::run_monotonicity);
  bind(app.add_subcommand("find-constant",
                          "smallest correction constant over a fixture family"),
       &vmt::runner::run_find_constant);
  bind(app.add_subcommand("density", "density limits at the contact points"),
       &vmt::runner::run_density);
  CLI::App* fixture = app.add_subcommand("fixture", "fixture utilities");
  fixture->require_subcommand(1);
  fixture->fallthrough();
  bind(fixture->add_subcommand("dump", "write the fixture geometry and a summary"),
       &vmt::runner::run_fixture_dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    vmt::runner::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = vmt::runner::load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed_opt->count() > 0) cfg.seed = seed;
    return driver ? driver(cfg) : 1;
  } catch (const std::exception& e) {
    std::cerr << "vmt: " << e.what() << "\n";
    return 1;
  }
}
