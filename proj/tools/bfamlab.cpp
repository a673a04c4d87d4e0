#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "bfam/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pseudospectral runs and estimate checks for two-component "
               "b-family equations with time-dependent coefficients"};

  std::string config_path, out_dir = "out";
  std::uint64_t seed = 12345;
  int workers = 1;
  app.add_option("-c,--config", config_path, "key = value run configuration")
      ->required();
  app.add_option("-o,--out", out_dir, "output directory (default: out)");
  app.add_option("--seed", seed, "random seed for sampled diagnostics");
  app.add_option("--workers", workers, "worker threads for scan scenarios")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    bfam::RunConfig cfg = bfam::parse_config_file(config_path);
    cfg.out_dir = out_dir;
    cfg.seed = seed;
    cfg.workers = workers;
    return bfam::run_scenario(cfg);
  } catch (const bfam::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
