#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "harness/config.hpp"
#include "harness/experiment.hpp"
#include "harness/ini.hpp"
#include "harness/verify.hpp"

using namespace invguard::harness;

// Exit codes: 0 ok, 1 a property or expectation failed, 2 configuration or runtime error.
int main(int argc, char** argv) {
  CLI::App app{"invariant-guard: invariant-enforcing corrections for conservation-law solvers"};
  app.require_subcommand(1);

  std::string config;
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress progress output");

  auto* run = app.add_subcommand("run", "Run a reference and every (resolution, variant) pair of an experiment");
  run->add_option("config", config, "Experiment INI file")->required();
  auto* verify = app.add_subcommand("verify", "Check the exactness properties of every corrector on random inputs");
  verify->add_option("config", config, "Verify INI file")->required();
  auto* sweep = app.add_subcommand("sweep", "Resolution sweep with error-vs-N output");
  sweep->add_option("config", config, "Experiment INI file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  RunOptions opt;
  opt.log = quiet ? nullptr : &std::cerr;
  try {
    if (*run) {
      auto cfg = load_experiment(config);
      auto res = run_experiment(cfg, opt);
      std::cout << "output: " << res.output_dir.string() << "\n";
      return res.exit_code;
    }
    if (*sweep) {
      auto cfg = load_experiment(config);
      auto res = run_sweep(cfg, opt);
      std::cout << "output: " << res.output_dir.string() << "\n";
      return res.exit_code;
    }
    auto cfg = load_verify(config);
    auto report = run_verify(cfg);
    print_verify_table(std::cout, report);
    return report.all_pass() ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
