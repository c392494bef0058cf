#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "smcc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Sparse-aware maximum correntropy adaptive filter experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(smcc::kToolVersion));

  smcc::RunOptions run_opts;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> threads;

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("config", run_opts.config_path, "Experiment configuration (JSON)")
        ->required();
    cmd->add_option("--out", run_opts.out_dir, "Output directory")->required();
    cmd->add_option("--seed", seed, "Override run.seed");
    cmd->add_option("--trials", trials, "Override run.trials")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", threads, "Worker threads (default: SMCC_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* run = app.add_subcommand("run", "Run a Monte Carlo experiment or sweep");
  add_run_flags(run);
  CLI::App* echo = app.add_subcommand("echo", "Run an echo-cancellation experiment");
  add_run_flags(echo);

  smcc::BoundOptions bound_opts;
  CLI::App* bound = app.add_subcommand("bound", "Estimate the step-size stability bound");
  bound->add_option("config", bound_opts.config_path, "Experiment configuration (JSON)")
      ->required();
  bound->add_flag("--both-variance-readings", bound_opts.both_variance_readings,
                  "Report the bound with nu read as a variance and as a standard deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : smcc::kExitConfig;
  }

  run_opts.overrides.seed = seed;
  run_opts.overrides.trials = trials;
  run_opts.threads = threads;

  if (run->parsed()) return smcc::cmd_run(run_opts, std::cout, std::cerr);
  if (echo->parsed()) return smcc::cmd_echo(run_opts, std::cout, std::cerr);
  return smcc::cmd_bound(bound_opts, std::cout, std::cerr);
}
