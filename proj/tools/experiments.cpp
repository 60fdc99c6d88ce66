#include "experiments.hpp"

#include <cstdio>

#include "hpl/verify.hpp"

namespace hpl::cli {

int run_experiment(const ExperimentConfig& cfg) {
  (void)cfg;
  std::fprintf(stderr, "not implemented yet\n");
  return 1;
}

int run_verify_all(std::uint64_t seed, const std::string& out_dir, unsigned jobs) {
  (void)seed;
  (void)out_dir;
  (void)jobs;
  return 2;
}

}  // namespace hpl::cli
