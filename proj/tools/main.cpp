#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "experiments.hpp"
#include "hpl/errors.hpp"
#include "hpl/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"hpl: Poisson intensity estimation by pairwise robust testing"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::size_t> reps_flag;
  std::optional<std::string> out_flag;
  std::optional<unsigned> jobs_flag;
  app.add_option("--config", config_path, "experiment config file");
  app.add_option("--seed", seed_flag, "seed override (falls back to $HPL_SEED)");
  app.add_option("--reps", reps_flag, "replication-count override");
  app.add_option("--out", out_flag, "output directory override");
  app.add_option("--jobs", jobs_flag, "worker threads for replication loops");

  auto* verify = app.add_subcommand("verify-all", "run the full acceptance battery");

  CLI11_PARSE(app, argc, argv);

  const auto env_seed = []() -> std::optional<std::uint64_t> {
    if (const char* s = std::getenv("HPL_SEED")) return std::strtoull(s, nullptr, 10);
    return std::nullopt;
  };

  try {
    if (verify->parsed()) {
      const std::uint64_t seed =
          seed_flag ? *seed_flag : env_seed().value_or(hpl::kDefaultVerifySeed);
      return hpl::cli::run_verify_all(seed, out_flag.value_or("out"), jobs_flag.value_or(1));
    }
    if (config_path.empty()) {
      std::fprintf(stderr, "error: --config is required (or use the verify-all subcommand)\n");
      return 1;
    }
    auto cfg = hpl::cli::ExperimentConfig::parse_file(config_path);
    // precedence: --seed flag, then the config, then $HPL_SEED
    if (seed_flag)
      cfg.seed = *seed_flag;
    else if (!cfg.seed_from_config)
      if (auto es = env_seed()) cfg.seed = *es;
    if (reps_flag) cfg.reps = *reps_flag;
    if (out_flag) cfg.out_dir = *out_flag;
    if (jobs_flag) cfg.jobs = *jobs_flag;
    return hpl::cli::run_experiment(cfg);
  } catch (const hpl::cli::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const hpl::CapacityError& e) {
    std::fprintf(stderr, "capacity error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
