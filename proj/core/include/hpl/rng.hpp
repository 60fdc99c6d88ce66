#pragma once

#include <array>
#include <cstdint>

namespace hpl {

/// Identifies a reproducible random stream. The same (value, stream) pair
/// always replays the same draws, independent of platform.
struct Seed {
  std::uint64_t value = 0;
  std::uint64_t stream = 0;
};

/// Derives the seed for replication `rep` of a Monte Carlo run. Replications
/// get disjoint streams, so results do not depend on execution order.
Seed replication_seed(Seed master, std::uint64_t rep);

/// xoshiro256++ seeded through splitmix64. Hand-rolled (rather than
/// <random> distributions) so draws are identical across standard libraries.
class Rng {
 public:
  explicit Rng(Seed seed);

  std::uint64_t next_u64();

  /// Uniform in [0, 1).
  double uniform();

  bool bernoulli(double p) { return uniform() < p; }

  /// Exact Poisson(mean) by multiplicative inversion. Means above 30 are
  /// split into chunks of at most 30 and the draws summed; the sum of
  /// independent Poissons is Poisson, so the distribution stays exact.
  std::int64_t poisson(double mean);

 private:
  std::int64_t poisson_small(double mean);
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace hpl
