#pragma once

#include "config.hpp"

namespace hpl::cli {

/// Runs one experiment: writes CSV artifacts (with config-echo comment
/// headers) into cfg.out_dir. Returns the process exit code:
/// 0 ok, 1 config error, 2 acceptance failure, 3 capacity.
int run_experiment(const ExperimentConfig& cfg);

/// Runs the full acceptance battery, prints one line per criterion, writes
/// verify.csv into out_dir. Exit 0 when every row passes, 2 otherwise.
int run_verify_all(std::uint64_t seed, const std::string& out_dir, unsigned jobs);

}  // namespace hpl::cli
