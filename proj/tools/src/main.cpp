#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "experiments.hpp"
#include "hst/errors.hpp"
#include "hst/parallel.hpp"

int main(int argc, char** argv) {
  using namespace hst::cli;
  CLI::App app{"horseshoe-thermo: thermodynamic formalism experiments for a partially hyperbolic horseshoe"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  long long seed = -1;
  int threads = 0;
  auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides output_dir)");
  run->add_option("--seed", seed, "master seed (overrides seed)")->check(CLI::NonNegativeNumber);
  run->add_option("--threads", threads, "worker threads, 0 = hardware")->check(CLI::NonNegativeNumber);

  auto* list = app.add_subcommand("list-experiments", "print the available experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfig;
  }

  if (list->parsed()) {
    for (const auto& n : experiment_names()) std::cout << n << "\t" << experiment_description(n) << "\n";
    return kOk;
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (threads == 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    hst::default_threads() = threads;
    const RunResult r = run_experiment(cfg, threads);
    write_outputs(r, cfg.output_dir);
    std::cout << r.summary.dump(2) << "\n";
    return r.exit_code;
  } catch (const hst::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}
